#pragma once

// The extremal numbers N_k* with gpf p_k: q-sequence, exponents, the
// eta = E + F split, the S - U - V decomposition of log G and the band sums.
// Everything is evaluated in log space; N_k* is only materialized by
// bigint_verify.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "glab/ddreal.hpp"
#include "glab/primes.hpp"
#include "glab/zeta.hpp"

namespace glab::extremal {

/// Largest k accepted by LemmaContext (tables are O(k) pair values per row).
inline constexpr std::uint64_t kMaxK = 5'000'000;

struct ExponentRun {
  std::uint32_t value = 0;
  std::uint64_t count = 0;
  bool operator==(const ExponentRun&) const = default;
};

/// Exponent vector over p_1, p_2, ..., p_k (all exponents >= 1), stored as
/// runs of equal exponents. Prime values are resolved by ordinal.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  FactoredInteger(std::vector<ExponentRun> runs, DDReal log_value);

  /// Merges adjacent equal values; drops empty runs.
  static std::vector<ExponentRun> normalize(std::vector<ExponentRun> runs);
  /// Runs from an explicit exponent list alpha_1..alpha_k.
  static std::vector<ExponentRun> encode(std::span<const std::uint32_t> exponents);

  const std::vector<ExponentRun>& runs() const { return runs_; }
  const DDReal& log_value() const { return log_value_; }
  /// Number of prime factors k (the ordinal of the greatest one).
  std::uint64_t size() const;
  /// alpha_j for 1 <= j <= size().
  std::uint32_t exponent(std::uint64_t j) const;
  std::vector<std::uint32_t> expand() const;
  /// (prime_index, exponent) pairs, indices strictly increasing.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors() const;

  bool operator==(const FactoredInteger& o) const = default;

 private:
  std::vector<ExponentRun> runs_;
  DDReal log_value_;
};

/// Named outcome of each structural and analytic check on a certificate.
struct Checks {
  bool q_decreasing = false;
  bool exponents_monotone = false;
  bool alpha_nu = false;       ///< alpha_nu = r and p_nu = q_r
  bool band_property = false;  ///< alpha_j = m < r  <=>  q_{m+1} < p_j <= q_m
  bool product_form = false;   ///< primorial product form gives the same exponents
  bool eta_split = false;      ///< |eta - (E + F)| <= 1e-20
  bool log_G_split = false;    ///< |log G - (S - U - V)| <= 1e-20
  bool band_sum = false;       ///< |sum_m U_{k,m} - U_k| <= 1e-20
  bool band_bracket = false;   ///< Y-difference bracket for every band m < r
  bool r_band_bound = false;   ///< U_{k,r} < 3 / (2 p_k)^(1 - 1/r)
  bool F_bound = false;        ///< 0 < F < q_r (r + 1) log q_r
  bool gap_positive = false;

  bool all() const;
  /// Names of failed checks, comma separated; empty when all pass.
  std::string failures() const;
};

struct ExtremalCertificate {
  std::uint64_t k = 0;
  std::uint64_t p_k = 0;
  int r = 0;
  std::vector<std::uint64_t> q;  ///< q_1 = p_k > q_2 > ... > q_r
  std::uint64_t nu = 0;
  DDReal log_H;                  ///< (r + 1) log q_r
  FactoredInteger N_star;
  DDReal eta;                    ///< log N_k*
  DDReal E;                      ///< sum_m theta(q_m)
  DDReal F;                      ///< sum_{j < nu} (alpha_j - r) log p_j
  DDReal theta_pk;
  DDReal loglog_theta;
  DDReal S_k;
  DDReal U_k;
  DDReal V_k;                    ///< log log eta
  std::vector<DDReal> U_bands;   ///< U_{k,1}, ..., U_{k,r}
  DDReal log_G;
  DDReal gap;                    ///< S_k - loglog theta(p_k) - log G
  DDReal scaled_gap;             ///< gap sqrt(p_k) log p_k
  DDReal delta_k;                ///< scaled_gap - 2 sqrt 2
  DDReal C_k;                    ///< (E - theta(p_k)) / sqrt(p_k)
  Checks checks;
};

/// Read-only prime, theta, S and band-sum tables shared by every certificate
/// with k <= max_k. Safe for concurrent readers.
class LemmaContext {
 public:
  explicit LemmaContext(std::uint64_t max_k, const SieveConfig& config = {});

  std::uint64_t max_k() const { return max_k_; }
  int max_r() const { return max_r_; }
  const PrimeTable& table() const { return *table_; }
  std::uint64_t prime(std::uint64_t j) const { return table_->nth(j); }
  const DDReal& log_p(std::uint64_t j) const { return log_p_[j]; }
  /// theta(p_j); j = 0 gives 0.
  const DDReal& theta(std::uint64_t j) const { return theta_[j]; }
  /// S(p_j); j = 0 gives 0.
  const DDReal& S(std::uint64_t j) const { return S_[j]; }
  /// sum_{i <= j} -log(1 - p_i^-(m+1)) for 1 <= m <= max_r().
  const DDReal& band_prefix(int m, std::uint64_t j) const;
  /// Y(p_j, lambda) for lambda in {m + 1, 2m + 2 : 1 <= m < max_r()}.
  DDReal tail_after(int lambda, std::uint64_t j) const;

 private:
  std::uint64_t max_k_;
  int max_r_ = 1;
  std::unique_ptr<PrimeTable> table_;
  std::vector<DDReal> log_p_;
  std::vector<DDReal> theta_;
  std::vector<DDReal> S_;
  std::vector<std::vector<DDReal>> bands_;  // bands_[m - 1][j]
  std::vector<std::pair<int, std::unique_ptr<PrimeZetaTails>>> tails_;
};

/// r = floor(sqrt(log 2p)).
int r_of(std::uint64_t p);

/// Largest n with n^m <= x.
std::uint64_t integer_root(std::uint64_t x, int m);

/// Smallest k with r >= 2 and a strictly decreasing q-sequence, found by
/// probing k = 1, 2, ... on first use.
std::uint64_t k_min();

/// Builds and decomposes the certificate for k. UnsupportedRegime for
/// k < k_min(); InvariantViolation when two q_m collide; DomainError when
/// k exceeds the context.
ExtremalCertificate construct(std::uint64_t k, const LemmaContext& ctx);

/// Convenience overload building a context sized for k.
ExtremalCertificate construct(std::uint64_t k);

/// Exponents of prod_m T(q_m) * prod_{j < nu} p_j^(alpha_j - r), expanded
/// term by term.
std::vector<ExponentRun> product_form_runs(const ExtremalCertificate& cert, const LemmaContext& ctx);

/// sum_j -log(1 - p_j^-(alpha_j + 1)) summed prime by prime (O(k)).
DDReal direct_U(const ExtremalCertificate& cert, const LemmaContext& ctx);

struct BigintReport {
  std::uint64_t k = 0;
  std::size_t digits = 0;          ///< decimal digits of N_k*
  DDReal log_G_exact;              ///< from exact N and sigma(N), 256-bit logs
  DDReal log_G_pipeline;
  double log_G_diff = 0.0;
  DDReal log_sigma_over_N_exact;   ///< log(sigma(N) / N)
  DDReal S_minus_U;                ///< pipeline S_k - U_k
  double sigma_ratio_diff = 0.0;
  bool exponents_match = false;    ///< N factored back over p_1..p_k equals the runs
  bool product_form_match = false; ///< primorial product equals prod p_j^alpha_j
  bool multiplicativity = false;   ///< sigma(2^a 3^b) by divisors = sigma(2^a) sigma(3^b)
  bool passed(double tol = 1e-12) const;
};

/// Exact cross-check of the log-space pipeline. ResourceError when N_k*
/// exceeds 10^4 decimal digits.
BigintReport bigint_verify(std::uint64_t k, const LemmaContext& ctx);
BigintReport bigint_verify(std::uint64_t k);

struct LemmaScanSummary {
  std::uint64_t certificates = 0;
  std::uint64_t failed = 0;
  std::string first_failure;
  double scaled_gap_min = 0.0;
  double scaled_gap_max = 0.0;
  double last_decade_mean_scaled_gap = 0.0;  ///< over p_k in (p_max / 10, p_max]
  double last_decade_mean_C_k = 0.0;
  std::uint64_t last_decade_count = 0;
  double last_eta_ratio = 0.0;   ///< (eta - theta(p_k)) / sqrt(2 p_k) at the final k
  double last_U1_ratio = 0.0;    ///< U_{k,1} sqrt(p_k) log p_k / sqrt 2 at the final k
  double fitted_C2 = 0.0;        ///< max of sum_{m >= 2} U_{k,m} / (p_k^(-2/3) sqrt(log p_k))
};

/// Certificates for k = from, from + stride, ..., <= to, built `threads` at a
/// time and visited in k order. Failing checks are counted, not thrown.
LemmaScanSummary scan_lemma(std::uint64_t from, std::uint64_t to, std::uint64_t stride,
                            const std::function<void(const ExtremalCertificate&)>& visit,
                            const LemmaContext& ctx, unsigned threads = 1);

}  // namespace glab::extremal
