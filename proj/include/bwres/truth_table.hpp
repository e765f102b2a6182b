#pragma once

// Brute-force truth-table evaluation of small CNF formulas.
//
// Assignments over v_1..v_n are numbered 0..2^n-1, with bit (i-1) of the
// number giving the value of v_i. Blocks of 64 consecutive assignments form a
// word; kernels compute, per word, the mask of assignments satisfying every
// clause. Variables v_1..v_6 vary inside a word, the rest are constant across
// it, so each literal is either a fixed bit pattern or all-zeros/all-ones.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bwres/cnf.hpp"

namespace bwres::truth_table {

/// Largest universe the exhaustive scan accepts.
inline constexpr std::uint32_t kMaxVars = 30;

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Clauses flattened to literal codes, ready for the kernels.
class PackedCnf {
 public:
  PackedCnf(std::uint32_t num_vars, std::span<const Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return offsets_.size() - 1; }
  /// Literal codes of clause i.
  std::span<const std::uint32_t> clause(std::size_t i) const {
    return {codes_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  bool has_empty_clause() const { return has_empty_; }
  /// Number of 64-assignment words covering the 2^n assignments.
  std::uint64_t word_count() const;
  /// Valid-assignment mask for word w (only the last word of a tiny universe
  /// is partial).
  std::uint64_t valid_mask(std::uint64_t w) const;

 private:
  std::uint32_t num_vars_;
  std::vector<std::uint32_t> codes_;
  std::vector<std::uint32_t> offsets_;
  bool has_empty_ = false;
};

/// out[i] = satisfying mask of word (first_word + i), before valid-masking.
using BlockKernel = void (*)(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                             std::uint64_t* out);

bool isa_available(Isa isa);
/// Widest kernel the running CPU supports.
Isa best_isa();
BlockKernel kernel_for(Isa isa);

/// Index of the first satisfying assignment, if any.
std::optional<std::uint64_t> first_model_index(const PackedCnf& cnf, Isa isa = best_isa());
std::uint64_t count_models(const PackedCnf& cnf, Isa isa = best_isa());

Model model_from_index(std::uint32_t num_vars, std::uint64_t index);

/// Throws UniverseTooLarge above the guard.
std::optional<Model> find_model(std::uint32_t num_vars, std::span<const Clause> clauses,
                                std::uint32_t guard = kMaxVars);
bool satisfiable(std::uint32_t num_vars, std::span<const Clause> clauses,
                 std::uint32_t guard = kMaxVars);
/// Every total assignment satisfying `clauses` satisfies `target`.
bool entails(std::uint32_t num_vars, std::span<const Clause> clauses, const Clause& target,
             std::uint32_t guard = kMaxVars);

}  // namespace bwres::truth_table
