// Compiled with -mavx2; only reached after a runtime CPU check.

#include "kernels.hpp"

#if BWRES_X86

#include <immintrin.h>

namespace bwres::truth_table::detail {

namespace {

constexpr std::size_t kLanes = 4;

// Per-variable vectors for the 4 words starting at an aligned base.
void fill_variable_vectors(std::uint32_t num_vars, std::uint64_t base,
                           __m256i* vars) {
  for (std::uint32_t v = 1; v <= num_vars; ++v) {
    const std::uint32_t bit = v - 1;
    if (bit < 6) {
      vars[v] = _mm256_set1_epi64x(static_cast<long long>(kInWordPattern[bit]));
    } else if (bit == 6) {
      vars[v] = _mm256_setr_epi64x(0, -1, 0, -1);
    } else if (bit == 7) {
      vars[v] = _mm256_setr_epi64x(0, 0, -1, -1);
    } else {
      vars[v] = _mm256_set1_epi64x(((base >> (bit - 6)) & 1u) ? -1 : 0);
    }
  }
}

}  // namespace

void evaluate_avx2(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                   std::uint64_t* out) {
  std::size_t i = 0;
  // Unaligned head.
  const std::size_t head = static_cast<std::size_t>((kLanes - first_word % kLanes) % kLanes);
  if (head > 0) {
    const std::size_t n = head < count ? head : count;
    evaluate_scalar(cnf, first_word, n, out);
    i = n;
  }

  const std::size_t m = cnf.num_clauses();
  const __m256i ones = _mm256_set1_epi64x(-1);
  __m256i vars[kMaxVars + 1] = {};
  for (; i + kLanes <= count; i += kLanes) {
    const std::uint64_t base = first_word + i;
    fill_variable_vectors(cnf.num_vars(), base, vars);
    __m256i acc = ones;
    for (std::size_t c = 0; c < m; ++c) {
      __m256i sat = _mm256_setzero_si256();
      for (std::uint32_t code : cnf.clause(c)) {
        const __m256i v = vars[code >> 1];
        sat = _mm256_or_si256(sat, (code & 1u) ? v : _mm256_xor_si256(v, ones));
      }
      acc = _mm256_and_si256(acc, sat);
      if (_mm256_testz_si256(acc, acc)) break;
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
  }

  if (i < count) evaluate_scalar(cnf, first_word + i, count - i, out + i);
}

}  // namespace bwres::truth_table::detail

#endif
