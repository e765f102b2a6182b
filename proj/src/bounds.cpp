#include <cmath>
#include <limits>

#include "bwres/error.hpp"
#include "bwres/resolution.hpp"

namespace bwres {

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::DecisionScheme: return "decision";
    case BoundKind::AssertingScheme: return "asserting";
    case BoundKind::WidthOnly: return "width-only";
  }
  return "unknown";
}

double simulation_bound(const BoundQuery& q) {
  if (q.n < 1 || q.k < 1 || (q.kind != BoundKind::WidthOnly && q.m < 1))
    throw Error(ErrorKind::DomainError, "bound parameters must be positive");
  const double m = static_cast<double>(q.m);
  const double n = static_cast<double>(q.n);
  const double k = static_cast<double>(q.k);
  switch (q.kind) {
    case BoundKind::DecisionScheme:
      return 4.0 * m * std::log(4.0 * m) * std::pow(n, k);
    case BoundKind::AssertingScheme:
      return 4.0 * k * m * std::log(4.0 * k * n * m) * std::pow(n, k + 1.0);
    case BoundKind::WidthOnly:
      return 16.0 * k * (k + 1.0) * std::log(16.0 * k * n) * std::pow(n, 2.0 * k + 1.0);
  }
  throw Error(ErrorKind::DomainError, "unknown bound kind");
}

std::uint64_t simulation_bound_ceiling(const BoundQuery& q) {
  const double b = std::ceil(simulation_bound(q));
  // 2^64 is exactly representable; anything at or above it saturates.
  if (!(b < 18446744073709551616.0)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(b);
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::DomainError, "integer overflow");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::DomainError, "integer overflow");
  return r;
}

}  // namespace

std::uint64_t clause_count_bound(std::uint64_t n, std::uint64_t k) {
  if (n < 2) throw Error(ErrorKind::DomainError, "clause_count_bound needs n >= 2");
  if (k < 1) throw Error(ErrorKind::DomainError, "clause_count_bound needs k >= 1");
  std::uint64_t p = 4;
  for (std::uint64_t i = 0; i < k; ++i) p = checked_mul(p, n);
  return p;
}

std::uint64_t clause_space_size(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, i)
  std::uint64_t pow2 = 1;
  for (std::uint64_t i = 0; i <= k && i <= n; ++i) {
    if (i > 0) {
      // C(n,i) = C(n,i-1) * (n-i+1) / i, exact at every step.
      binom = checked_mul(binom, n - i + 1) / i;
      pow2 = checked_mul(pow2, 2);
    }
    total = checked_add(total, checked_mul(pow2, binom));
  }
  return total;
}

}  // namespace bwres
