#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glab/ddreal.hpp"

namespace glab {

/// zeta(s) - 1 for real s > 1 (Euler–Maclaurin, N = 20, fifteen Bernoulli
/// corrections). Relative accuracy ~1e-31 in zeta(s) itself.
DDReal zeta_minus_one(const DDReal& s);

/// Möbius function for small n.
int moebius(std::uint64_t n);

/// Y(x, lambda) = sum over primes p > x of p^(-lambda), lambda > 1, x >= 1.
///
/// Evaluated as sum_n mu(n)/n * log zeta_x(n lambda), where zeta_x drops the
/// Euler factors of the primes <= x. The n-series stops once the remainder
/// bound 2 (x^-s + x^(1-s) / (s - 1)), s = n lambda, falls below 1e-36, so the
/// absolute error is set by pair rounding (~1e-31).
DDReal prime_zeta_tail_sum(double x, const DDReal& lambda);

/// Y(p_j, lambda) for every prefix of a contiguous prime list starting at 2.
/// Immutable after construction.
class PrimeZetaTails {
 public:
  PrimeZetaTails(std::span<const std::uint64_t> primes, double lambda);

  double lambda() const { return lambda_; }
  /// Prime zeta P(lambda) = Y(1, lambda).
  const DDReal& total() const { return total_; }
  /// Y(p_j, lambda); j = 0 gives P(lambda). Requires j <= number of primes.
  DDReal after_index(std::size_t j) const { return total_ - prefix_[j]; }

 private:
  double lambda_;
  DDReal total_;
  std::vector<DDReal> prefix_;  // prefix_[j] = sum_{i <= j} p_i^-lambda
};

}  // namespace glab
