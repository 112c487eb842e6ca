#pragma once

// Streaming evaluation of the Chebyshev function, the Mertens sum and its
// two remainders, the reciprocal-sum criteria, the Meissel–Mertens constant
// and the prime-power tail sums.
//
// Conventions: theta(x) = sum_{p <= x} log p, S(x) = sum_{p <= x} log(p/(p-1)),
// R(x) = S(x) - log log x - gamma, Q(x) = S(x) - log log theta(x) - gamma.
// All logarithms are natural.

#include <cstdint>
#include <functional>
#include <optional>

#include "glab/accumulator.hpp"
#include "glab/ddreal.hpp"
#include "glab/primes.hpp"

namespace glab::mertens {

/// Smallest limit for which log log theta is taken (theta(5) = log 30 > 1).
inline constexpr std::uint64_t kMinLimit = 5;

struct RemainderSample {
  std::uint64_t k = 0;
  std::uint64_t p = 0;
  DDReal theta;
  DDReal S;
  DDReal R;
  DDReal loglog_p;
  DDReal loglog_theta;             ///< meaningful only when Q is present
  std::optional<DDReal> Q;         ///< absent for p < 5
  std::optional<DDReal> scaled_Q;  ///< Q * sqrt(p) * log p
};

/// The strictly ordered fold behind scan(): push primes in increasing order.
class RemainderFold {
 public:
  RemainderSample push(std::uint64_t p);
  std::uint64_t count() const { return k_; }

 private:
  std::uint64_t k_ = 0;
  std::uint64_t last_ = 0;
  Accumulator theta_;
  Accumulator S_;
};

/// log(p / (p - 1)) computed as log1p(1 / (p - 1)).
DDReal mertens_term(std::uint64_t p);

struct ScanSummary {
  std::uint64_t samples = 0;
  std::uint64_t window_from = 0;         ///< sup/inf taken over p >= window_from
  std::optional<DDReal> sup_scaled_Q;
  std::uint64_t sup_p = 0;
  std::optional<DDReal> inf_scaled_Q;
  std::uint64_t inf_p = 0;
  DDReal max_identity_error;             ///< max |Q - R - (loglog p - loglog theta)|
};

/// One sample per prime <= limit in prime order. DomainError for limit < 5.
ScanSummary scan(std::uint64_t limit, const std::function<void(const RemainderSample&)>& visit,
                 const SieveConfig& config = {}, std::uint64_t window_from = 1000);

struct RemainderPoint {
  double x = 0.0;
  DDReal theta;
  DDReal S;
  DDReal Q;
  DDReal scaled_Q;  ///< Q * sqrt(x) * log x, scaled at x itself
};

/// Q(x) at a real point x >= 5 (step function between primes).
RemainderPoint remainder_at(double x);

struct ThetaSample {
  std::uint64_t x = 0;
  DDReal deviation;  ///< theta(x) - x
  DDReal c0_scaled;  ///< |theta - x| log x / x
  DDReal rh_scaled;  ///< |theta - x| 8 pi / (sqrt x log^2 x)
};

struct ThetaSummary {
  std::uint64_t samples = 0;
  /// Empirical C0: sup of |theta(x) - x| log x / x over the sampled primes and
  /// the left limits x -> p_{k+1}^- inside the range.
  double c0_sup = 0.0;
  double c0_sup_at = 0.0;
  double rh_sup = 0.0;
  double rh_sup_at = 0.0;
};

/// DomainError for limit < 2.
ThetaSummary theta_deviation(std::uint64_t limit, const std::function<void(const ThetaSample&)>& visit,
                             const SieveConfig& config = {});

struct TailEstimate {
  double x = 0.0;
  double lambda = 0.0;
  DDReal Y;         ///< sum_{p > x} p^-lambda
  DDReal estimate;  ///< 1 / ((lambda - 1) x^(lambda-1) log x)
  DDReal delta;     ///< Y / estimate - 1
  double X_lambda = 0.0;  ///< exp(max(1, 2 / (lambda - 1)))
  bool above_threshold = false;  ///< x > X_lambda
};

/// DomainError for lambda <= 1 or x < 2.
TailEstimate prime_zeta_tail(double x, double lambda);

/// The leading-order estimate 1 / ((lambda - 1) x^(lambda - 1) log x).
DDReal tail_estimate(double x, double lambda);

/// J(x, lambda) = integral_x^inf dt / (t^lambda log t), x > 1, lambda > 1.
///
/// With u = log t this is the exponential integral E1(a), a = (lambda-1) log x.
/// It is evaluated by adaptive quadrature after the further substitution
/// v = a e^w, integrating exp(-a e^w) over w in [0, log(1 + 80/a)]; the
/// dropped tail is below e^(-a-80) / (a + 80).
DDReal log_integral_J(double x, double lambda);

struct B1Result {
  DDReal value;
  std::uint64_t head_limit = 0;  ///< X: primes <= X summed directly
  DDReal head;                   ///< gamma + sum_{p <= X} (log(1 - 1/p) + 1/p)
  DDReal tail;                   ///< -sum_{m >= 2} Y(X, m) / m
  int tail_terms = 0;
  double truncation_bound = 0.0;
};

/// gamma + sum_{p <= X} (log(1 - 1/p) + 1/p), no tail.
DDReal b1_head(std::uint64_t head_limit);

/// Meissel–Mertens constant. DomainError for tolerance <= 0; ResourceError
/// when tolerance is below what pair arithmetic can certify (1e-30).
B1Result meissel_mertens_B1(double tolerance, std::uint64_t head_limit = 1000);

struct CriterionRow {
  std::uint64_t k = 0;
  std::uint64_t p = 0;
  DDReal recip_sum;                  ///< sum_{j <= k} 1 / p_j
  std::optional<DDReal> loglog_theta;
  std::optional<DDReal> B1_gap;      ///< recip_sum - loglog theta - B1
  std::optional<DDReal> scaled_gap;  ///< B1_gap sqrt(p) log p
  DDReal identity_residual;          ///< sum (1/p + log(1 - 1/p)) - (B1 - gamma)
  DDReal scaled_residual;            ///< identity_residual * p_k
};

struct CriterionSummary {
  std::uint64_t rows = 0;
  DDReal B1;
  DDReal max_scaled_residual;  ///< empirical constant in the O(1/p_k) identity
  std::optional<DDReal> sup_scaled_gap;
  std::uint64_t sup_p = 0;
};

CriterionSummary criterion_scan(std::uint64_t limit, const std::function<void(const CriterionRow&)>& visit,
                                const SieveConfig& config = {}, std::uint64_t window_from = 1000);

}  // namespace glab::mertens
