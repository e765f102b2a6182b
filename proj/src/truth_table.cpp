#include "bwres/truth_table.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "bwres/error.hpp"
#include "kernels/kernels.hpp"

namespace bwres::truth_table {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

PackedCnf::PackedCnf(std::uint32_t num_vars, std::span<const Clause> clauses)
    : num_vars_(num_vars) {
  if (num_vars > kMaxVars)
    throw Error(ErrorKind::UniverseTooLarge,
                std::to_string(num_vars) + " variables exceed the truth-table limit");
  offsets_.reserve(clauses.size() + 1);
  offsets_.push_back(0);
  for (const auto& c : clauses) {
    if (c.max_var() > num_vars)
      throw Error(ErrorKind::VariableOutOfRange, "clause beyond universe");
    if (c.empty()) has_empty_ = true;
    // Tautologies hold everywhere and only cost time.
    if (!c.tautological()) {
      for (Literal l : c) codes_.push_back(l.code());
      offsets_.push_back(static_cast<std::uint32_t>(codes_.size()));
    }
  }
}

std::uint64_t PackedCnf::word_count() const {
  return num_vars_ <= 6 ? 1 : (1ull << (num_vars_ - 6));
}

std::uint64_t PackedCnf::valid_mask(std::uint64_t) const {
  if (num_vars_ >= 6) return ~0ull;
  return (1ull << (1u << num_vars_)) - 1;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if BWRES_X86 && defined(BWRES_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if BWRES_ARM64 && defined(BWRES_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa best = [] {
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return best;
}

BlockKernel kernel_for(Isa isa) {
  if (!isa_available(isa))
    throw Error(ErrorKind::InvalidParameters,
                std::string(to_string(isa)) + " kernel not available on this machine");
  switch (isa) {
#if BWRES_X86 && defined(BWRES_HAVE_AVX2)
    case Isa::Avx2: return &detail::evaluate_avx2;
#endif
#if BWRES_ARM64 && defined(BWRES_HAVE_NEON)
    case Isa::Neon: return &detail::evaluate_neon;
#endif
    default: return &detail::evaluate_scalar;
  }
}

namespace {

constexpr std::size_t kChunkWords = 256;

// Calls visit(word_index, mask) for every word with a non-zero mask; stops
// when visit returns false.
template <typename Visit>
void scan(const PackedCnf& cnf, Isa isa, Visit&& visit) {
  if (cnf.has_empty_clause()) return;
  const BlockKernel kernel = kernel_for(isa);
  const std::uint64_t words = cnf.word_count();
  std::array<std::uint64_t, kChunkWords> buffer{};
  for (std::uint64_t w = 0; w < words; w += kChunkWords) {
    const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(kChunkWords, words - w));
    kernel(cnf, w, n, buffer.data());
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t mask = buffer[i] & cnf.valid_mask(w + i);
      if (mask != 0 && !visit(w + i, mask)) return;
    }
  }
}

void check_guard(std::uint32_t num_vars, std::uint32_t guard) {
  if (num_vars > guard || num_vars > kMaxVars)
    throw Error(ErrorKind::UniverseTooLarge, std::to_string(num_vars) +
                                                 " variables exceed the exhaustive-scan guard of " +
                                                 std::to_string(std::min(guard, kMaxVars)));
}

}  // namespace

std::optional<std::uint64_t> first_model_index(const PackedCnf& cnf, Isa isa) {
  std::optional<std::uint64_t> found;
  scan(cnf, isa, [&](std::uint64_t w, std::uint64_t mask) {
    found = w * 64 + static_cast<std::uint64_t>(std::countr_zero(mask));
    return false;
  });
  return found;
}

std::uint64_t count_models(const PackedCnf& cnf, Isa isa) {
  std::uint64_t total = 0;
  scan(cnf, isa, [&](std::uint64_t, std::uint64_t mask) {
    total += static_cast<std::uint64_t>(std::popcount(mask));
    return true;
  });
  return total;
}

Model model_from_index(std::uint32_t num_vars, std::uint64_t index) {
  Model m(num_vars + 1, false);
  for (std::uint32_t v = 1; v <= num_vars; ++v) m[v] = ((index >> (v - 1)) & 1u) != 0;
  return m;
}

std::optional<Model> find_model(std::uint32_t num_vars, std::span<const Clause> clauses,
                                std::uint32_t guard) {
  check_guard(num_vars, guard);
  const PackedCnf cnf(num_vars, clauses);
  if (auto idx = first_model_index(cnf)) return model_from_index(num_vars, *idx);
  return std::nullopt;
}

bool satisfiable(std::uint32_t num_vars, std::span<const Clause> clauses, std::uint32_t guard) {
  return find_model(num_vars, clauses, guard).has_value();
}

bool entails(std::uint32_t num_vars, std::span<const Clause> clauses, const Clause& target,
             std::uint32_t guard) {
  check_guard(num_vars, guard);
  if (target.tautological()) return true;
  // clauses |= target  iff  clauses plus the negated literals of target is
  // unsatisfiable.
  std::vector<Clause> augmented(clauses.begin(), clauses.end());
  for (Literal l : target) augmented.push_back(Clause{~l});
  return !first_model_index(PackedCnf(num_vars, augmented)).has_value();
}

}  // namespace bwres::truth_table
