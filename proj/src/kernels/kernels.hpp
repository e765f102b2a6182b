#pragma once

#include <cstdint>

#include "bwres/truth_table.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__) || defined(_M_IX86)
#define BWRES_X86 1
#else
#define BWRES_X86 0
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define BWRES_ARM64 1
#else
#define BWRES_ARM64 0
#endif

namespace bwres::truth_table::detail {

// Value of v_1..v_6 across the 64 assignments of a word.
inline constexpr std::uint64_t kInWordPattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

/// Word holding the value of variable `var` (1-based) for word index w.
inline std::uint64_t variable_word(std::uint32_t var, std::uint64_t w) {
  const std::uint32_t bit = var - 1;
  if (bit < 6) return kInWordPattern[bit];
  return ((w >> (bit - 6)) & 1u) ? ~0ull : 0ull;
}

inline std::uint64_t literal_word(std::uint32_t code, std::uint64_t w) {
  const std::uint64_t v = variable_word(code >> 1, w);
  return (code & 1u) ? v : ~v;
}

void evaluate_scalar(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                     std::uint64_t* out);

#if BWRES_X86
void evaluate_avx2(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                   std::uint64_t* out);
#endif

#if BWRES_ARM64
void evaluate_neon(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                   std::uint64_t* out);
#endif

}  // namespace bwres::truth_table::detail
