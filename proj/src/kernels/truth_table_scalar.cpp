#include "kernels.hpp"

namespace bwres::truth_table::detail {

void evaluate_scalar(const PackedCnf& cnf, std::uint64_t first_word, std::size_t count,
                     std::uint64_t* out) {
  const std::size_t m = cnf.num_clauses();
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t w = first_word + i;
    std::uint64_t acc = ~0ull;
    for (std::size_t c = 0; c < m && acc != 0; ++c) {
      std::uint64_t sat = 0;
      for (std::uint32_t code : cnf.clause(c)) sat |= literal_word(code, w);
      acc &= sat;
    }
    out[i] = acc;
  }
}

}  // namespace bwres::truth_table::detail
