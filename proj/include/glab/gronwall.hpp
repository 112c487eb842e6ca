#pragma once

// Divisor sums and Gronwall numbers G(N) = sigma(N) / (N log log N): exact
// sigma, the exhaustive Ramanujan–Robin scan, and the exploratory max-G
// search over exponent vectors with a fixed greatest prime factor.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "glab/bigfloat.hpp"
#include "glab/ddreal.hpp"
#include "glab/extremal.hpp"

namespace glab::gronwall {

/// Robin: G(N) < e^gamma for every N above this iff RH. A violator beyond it
/// is reported with its own exit status.
inline constexpr std::uint64_t kRobinThreshold = 5040;
inline constexpr std::uint64_t kMaxScanLimit = 1'000'000'000;
/// |margin| below this in pair precision is re-decided with MPFR.
inline constexpr double kExactnessBand = 1e-15;

/// Prime factorization (p, e) with p increasing. Pollard–Brent beyond trial
/// division; deterministic. DomainError for n = 0.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

/// sigma(n) = prod (p^(e+1) - 1) / (p - 1), exact.
BigInt sigma(std::uint64_t n);
/// sigma of an exponent vector over p_1..p_k; primes[j-1] = p_j.
BigInt sigma(const extremal::FactoredInteger& n, std::span<const std::uint64_t> primes);

struct GronwallRecord {
  std::uint64_t N = 0;
  BigInt sigma;
  DDReal G;       ///< sigma / (N log log N)
  DDReal margin;  ///< G - e^gamma
};

/// DomainError for N < 3.
GronwallRecord gronwall_G(std::uint64_t N);

/// sign(G(N) - e^gamma) at `bits` of precision (never zero in practice).
int margin_sign_high_precision(std::uint64_t N, const BigInt& sigma, mpfr_prec_t bits = 256);
BigFloat margin_high_precision(std::uint64_t N, const BigInt& sigma, mpfr_prec_t bits = 256);

/// sigma(n) for n in [lo, hi) by a divisor-pair sieve over d <= sqrt(n);
/// out.size() must equal hi - lo, lo >= 1.
void divisor_sums(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out);

struct NearMiss {
  std::uint64_t N = 0;
  double margin = 0.0;  ///< pair-precision margin
  int sign = 0;         ///< decided at 256 bits
};

struct ViolatorReport {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> violators;  ///< N in [3, limit] with G(N) >= e^gamma
  std::uint64_t max_violator = 0;
  std::vector<NearMiss> near_misses;
  std::uint64_t escalations = 0;  ///< values re-decided in pair precision or MPFR
  bool violator_above_threshold() const { return max_violator > kRobinThreshold; }
};

/// Exhaustive scan of [3, limit]. Windows are sieved `threads` at a time and
/// merged in order. DomainError unless 3 <= limit <= 10^9.
ViolatorReport rri_scan(std::uint64_t limit, unsigned threads = 1);

struct MaxGResult {
  std::uint64_t k = 0;
  std::uint64_t p_k = 0;
  extremal::FactoredInteger best;
  DDReal log_G;
  DDReal seed_log_G;
  DDReal a_k;  ///< (gamma - log G) sqrt(p_k) log p_k
  std::uint64_t evaluations = 0;
  std::uint64_t budget = 0;
  bool converged = false;
  double window_lo = 0.0;  ///< 2 sqrt 2 - 2.5 - 0.25
  double window_hi = 0.0;  ///< 2 sqrt 2 - 1.5 + 0.25
  bool in_window = false;
};

/// Coordinate hill-climb over non-increasing exponent vectors on p_1..p_k
/// with alpha_k >= 1 and alpha_j <= floor(log 2p_k / log p_j) + 2 (raised to
/// the seed where the seed is larger). Seeds from the extremal certificate
/// when k >= k_min, otherwise from alpha_j = max(1, floor(log 2p_k / log p_j)).
/// `budget` counts candidate evaluations. DomainError for k < 2 or budget 0.
MaxGResult max_g(std::uint64_t k, std::uint64_t budget);

/// log G of an exponent vector over p_1..p_k in pair precision.
DDReal log_G_of(std::span<const std::uint32_t> exponents, std::span<const std::uint64_t> primes);

}  // namespace glab::gronwall
