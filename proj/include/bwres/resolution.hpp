#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bwres/cnf.hpp"

namespace bwres {

/// Res(A, B, x) = (A \ {x}) u (B \ {~x}) where `pivot` is the literal of A.
/// Throws NotResolvable unless pivot is in A and ~pivot is in B.
Clause resolve(const Clause& a, const Clause& b, Literal pivot);
/// Pivot given as a variable: requires x in A and ~x in B.
Clause resolve(const Clause& a, const Clause& b, Variable x);
/// True if A and B clash on v in either orientation.
bool resolvable_on(const Clause& a, const Clause& b, Variable v);

// ---------------------------------------------------------------------------
// Refutations

struct Axiom {
  bool operator==(const Axiom&) const = default;
};

/// Premise indices are 0-based positions in the step sequence.
struct Resolvent {
  std::size_t first = 0;
  std::size_t second = 0;
  Variable pivot;
  bool operator==(const Resolvent&) const = default;
};

struct ProofStep {
  Clause clause;
  std::variant<Axiom, Resolvent> justification;
  bool operator==(const ProofStep&) const = default;
};

class Refutation {
 public:
  Refutation() = default;
  explicit Refutation(std::vector<ProofStep> steps) : steps_(std::move(steps)) {}

  std::span<const ProofStep> steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  /// Largest clause width over the whole sequence, axioms included.
  std::size_t width() const;

  void add_axiom(Clause c);
  void add_resolvent(Clause c, std::size_t first, std::size_t second, Variable pivot);

 private:
  std::vector<ProofStep> steps_;
};

struct Rejection {
  std::size_t step = 0;
  std::string reason;
};

struct ProofCheck {
  bool valid = false;
  std::size_t length = 0;
  std::size_t width = 0;
  std::optional<Rejection> rejection;
};

ProofCheck verify_refutation(const CnfFormula& f, const Refutation& proof);

/// One step per line: `a <lits> 0` or `r <i> <j> <pivot> <lits> 0`, with
/// 1-based step numbers for i and j.
void write_refutation(std::ostream& os, const Refutation& proof);
std::string to_text(const Refutation& proof);
/// Throws MalformedProof on syntax errors; semantic checks are left to
/// verify_refutation.
Refutation parse_refutation(std::string_view text);

// ---------------------------------------------------------------------------
// Bounded-width saturation

struct SaturationResult {
  /// Set when the empty clause was derived; pruned to its ancestors.
  std::optional<Refutation> refutation;
  /// Axioms not admitted because they are wider than k.
  std::vector<Clause> excluded_wide;
  /// Tautological axioms, never needed and not admitted.
  std::size_t excluded_tautologies = 0;
  /// Distinct clauses present at termination.
  std::size_t clauses_derived = 0;

  bool refuted() const { return refutation.has_value(); }
};

/// Adds every non-tautological resolvent of width <= k until the empty
/// clause appears or nothing new can be derived.
SaturationResult saturate_bounded_width(const CnfFormula& f, std::size_t k);

// ---------------------------------------------------------------------------
// Closed-form bounds

enum class BoundKind { DecisionScheme, AssertingScheme, WidthOnly };

std::string_view to_string(BoundKind kind);

struct BoundQuery {
  BoundKind kind = BoundKind::DecisionScheme;
  /// Refutation length; ignored for WidthOnly.
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  std::uint64_t k = 1;
};

/// Conflicts-and-restarts bound:
///   DecisionScheme  4 m ln(4m) n^k
///   AssertingScheme 4 k m ln(4 k n m) n^(k+1)
///   WidthOnly       16 k (k+1) ln(16 k n) n^(2k+1)
double simulation_bound(const BoundQuery& q);

/// Bound rounded up to an integer count, saturating at UINT64_MAX.
std::uint64_t simulation_bound_ceiling(const BoundQuery& q);

/// 4 n^k, the length any width-k refutation over n variables can be assumed
/// to have. Requires n >= 2, k >= 1.
std::uint64_t clause_count_bound(std::uint64_t n, std::uint64_t k);

/// Number of consistent clauses of width <= k over n variables:
/// sum_{i=0..k} 2^i C(n, i). Exact.
std::uint64_t clause_space_size(std::uint64_t n, std::uint64_t k);

}  // namespace bwres
