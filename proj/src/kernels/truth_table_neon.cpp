#include "kernels.hpp"

#if BWRES_ARM64

#include <arm_neon.h>

#include <array>

namespace bwres::truth_table::detail {

namespace {

constexpr std::size_t kLanes = 2;

void fill_variable_vectors(std::uint32_t num_vars, std::uint64_t base,
                           std::array<uint64x2_t, kMaxVars + 1>& vars) {
  for (std::uint32_t v = 1; v <= num_vars; ++v) {
    const std::uint32_t bit = v - 1;
    if (bit < 6) {
      vars[v] = vdupq_n_u64(kInWordPattern[bit]);
    } else if (bit == 6) {
      const std::uint64_t lanes[2] = {0, ~0ull};
      vars[v] = vld1q_u64(lanes);
    } else {
      vars[v] = vdupq_n_u64(((base >> (bit - 6)) & 1u) ? ~0ull : 0);
    }
  }
}

}  // namespace

void evaluate_neon(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                   std::uint64_t* out) {
  std::size_t i = 0;
  if (first_word % kLanes != 0 && count > 0) {
    evaluate_scalar(cnf, first_word, 1, out);
    i = 1;
  }

  const std::size_t m = cnf.num_clauses();
  const uint64x2_t ones = vdupq_n_u64(~0ull);
  std::array<uint64x2_t, kMaxVars + 1> vars{};
  for (; i + kLanes <= count; i += kLanes) {
    const std::uint64_t base = first_word + i;
    fill_variable_vectors(cnf.num_vars(), base, vars);
    uint64x2_t acc = ones;
    for (std::size_t c = 0; c < m; ++c) {
      uint64x2_t sat = vdupq_n_u64(0);
      for (std::uint32_t code : cnf.clause(c)) {
        const uint64x2_t v = vars[code >> 1];
        sat = vorrq_u64(sat, (code & 1u) ? v : veorq_u64(v, ones));
      }
      acc = vandq_u64(acc, sat);
      if ((vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1)) == 0) break;
    }
    vst1q_u64(out + i, acc);
  }

  if (i < count) evaluate_scalar(cnf, first_word + i, count - i, out + i);
}

}  // namespace bwres::truth_table::detail

#endif
