#pragma once

// Test-side oracles and generators. Nothing here calls into the solver or
// the bitsliced scanner, so the checks stay independent of the code under
// test.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bwres/cnf.hpp"

namespace bwres::testing {

inline Clause C(std::initializer_list<int> lits) { return Clause::from_dimacs(lits); }
inline Literal L(int lit) { return Literal::from_dimacs(lit); }

inline CnfFormula F(std::uint32_t n, std::initializer_list<std::initializer_list<int>> clauses) {
  CnfFormula f(n);
  for (auto c : clauses) f.add(Clause::from_dimacs(c));
  return f;
}

/// F4: every clause over x = v1, y = v2.
inline CnfFormula f4() { return F(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}); }

/// D0 over a..e = v1..v5: {a, ~b}, {b, c}, {~a, ~b, d, e}.
inline CnfFormula d0() { return F(5, {{1, -2}, {2, 3}, {-1, -2, 4, 5}}); }

inline bool eval_clause(const Clause& c, std::uint64_t assignment) {
  for (Literal l : c)
    if (((assignment >> (l.var().index - 1)) & 1u) == (l.value() ? 1u : 0u)) return true;
  return false;
}

inline bool eval_all(std::span<const Clause> cs, std::uint64_t assignment) {
  for (const auto& c : cs)
    if (!eval_clause(c, assignment)) return false;
  return true;
}

/// Plain loop over all 2^n assignments.
inline std::optional<std::uint64_t> naive_model(std::uint32_t n, std::span<const Clause> cs) {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a)
    if (eval_all(cs, a)) return a;
  return std::nullopt;
}

inline std::uint64_t naive_count(std::uint32_t n, std::span<const Clause> cs) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) count += eval_all(cs, a);
  return count;
}

inline bool naive_entails(std::uint32_t n, std::span<const Clause> cs, const Clause& target) {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a)
    if (eval_all(cs, a) && !eval_clause(target, a)) return false;
  return true;
}

/// Random clauses with per-clause width drawn from [min_w, max_w]; literals
/// on distinct variables unless `allow_taut`.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool coin() { return uniform(0, 1) == 1; }

  Clause clause(std::uint32_t n, std::uint32_t width, bool allow_taut = false) {
    std::vector<Literal> lits;
    std::vector<bool> used(n + 1, false);
    while (lits.size() < width) {
      const auto v = static_cast<std::uint32_t>(uniform(1, n));
      if (used[v] && !allow_taut) continue;
      used[v] = true;
      lits.emplace_back(Variable{v}, coin());
    }
    return Clause(std::move(lits));
  }

  std::vector<Clause> clauses(std::uint32_t n, std::size_t m, std::uint32_t min_w,
                              std::uint32_t max_w) {
    std::vector<Clause> out;
    for (std::size_t i = 0; i < m; ++i)
      out.push_back(clause(n, static_cast<std::uint32_t>(uniform(min_w, std::min(max_w, n)))));
    return out;
  }

  CnfFormula formula(std::uint32_t n, std::size_t m, std::uint32_t min_w, std::uint32_t max_w) {
    return CnfFormula(n, clauses(n, m, min_w, max_w));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace bwres::testing
