#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace glab {

/// Every prime argument in the toolkit stays below this ceiling.
inline constexpr std::uint64_t kPrimeCeiling = std::uint64_t{1} << 63;

struct SieveConfig {
  std::uint64_t segment_size = std::uint64_t{1} << 20;  ///< numbers per segment
  unsigned threads = 1;
  std::uint64_t memory_budget = std::uint64_t{1} << 30;  ///< bytes
};

/// The primes of [lo, hi) in increasing order; primes[0] is p_{first_index}.
struct PrimeSegment {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> primes;
  std::uint64_t first_index = 1;
};

struct GapSample {
  std::uint64_t p = 0;      ///< p_k
  std::uint64_t gap = 0;    ///< p_{k+1} - p_k
  double normalized = 0.0;  ///< gap * log(p_k) / p_k
};

/// Sieves [lo, hi) with an odd-only bit-packed segmented sieve and records
/// the ordinal of the first prime. Throws ResourceError when the result
/// would not fit the memory budget, DomainError on an invalid range.
PrimeSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

/// The primes of [lo, hi) without ordinal bookkeeping.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi,
                                          const SieveConfig& config = {});

/// Visits the primes of [lo, hi) segment by segment in ascending order.
/// Segments may be sieved concurrently (config.threads) but `visit` is always
/// called from the calling thread in segment order.
void for_each_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config,
                      const std::function<void(std::span<const std::uint64_t>)>& visit);

/// pi(x): number of primes <= x.
std::uint64_t prime_count(std::uint64_t x);

/// Largest prime <= floor(y). Throws DomainError for y < 2.
std::uint64_t prev_prime(double y);
std::uint64_t prev_prime(std::uint64_t n);

/// p_k, 1-based. Throws DomainError for k = 0.
std::uint64_t nth_prime(std::uint64_t k);
/// j such that p_j = p. Throws DomainError when p is not prime.
std::uint64_t prime_index(std::uint64_t p);

/// Deterministic primality for every 64-bit n (Miller–Rabin with the first
/// twelve prime bases, which has no pseudoprimes below 3.3e24).
bool is_prime(std::uint64_t n);

/// All primes <= limit held in memory, for ordinal and predecessor queries.
/// Immutable after construction and safe for concurrent readers.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit, const SieveConfig& config = {});

  std::uint64_t limit() const { return limit_; }
  std::size_t size() const { return primes_.size(); }
  std::span<const std::uint64_t> primes() const { return primes_; }

  /// p_k for 1 <= k <= size().
  std::uint64_t nth(std::uint64_t k) const;
  /// Ordinal of a prime p <= limit(); DomainError if p is not prime.
  std::uint64_t index_of(std::uint64_t p) const;
  /// pi(x) for x <= limit().
  std::uint64_t count_upto(std::uint64_t x) const;
  /// Largest prime <= x for 2 <= x <= limit().
  std::uint64_t prev(std::uint64_t x) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

struct GapReport {
  std::uint64_t pairs = 0;
  double max_normalized = 0.0;  ///< empirical C1
  std::uint64_t max_normalized_p = 0;
  std::uint64_t max_gap = 0;
  std::uint64_t max_gap_p = 0;
};

/// One sample per consecutive prime pair below `limit`; `visit` may be empty.
/// Throws DomainError for limit < 3.
GapReport gap_scan(std::uint64_t limit, const std::function<void(const GapSample&)>& visit = {},
                   const SieveConfig& config = {});

}  // namespace glab
