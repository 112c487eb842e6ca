#include "glab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "glab/errors.hpp"

namespace glab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

using BaseList = std::vector<std::uint32_t>;

// Odd primes up to some bound, grown on demand. Readers hold a shared
// pointer to an immutable snapshot.
class BasePrimes {
 public:
  std::shared_ptr<const BaseList> upto(std::uint64_t bound) {
    std::lock_guard lock(mutex_);
    if (!list_ || bound > bound_) {
      const std::uint64_t target = std::max<std::uint64_t>(bound, std::max<std::uint64_t>(bound_ * 2, 1 << 16));
      list_ = std::make_shared<const BaseList>(simple_sieve(target));
      bound_ = target;
    }
    return list_;
  }

 private:
  static BaseList simple_sieve(std::uint64_t n) {
    // Odd-only byte sieve; index i stands for 2i + 1.
    std::vector<std::uint8_t> composite(n / 2 + 1, 0);
    BaseList out;
    for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
      if (composite[i]) continue;
      const std::uint64_t p = 2 * i + 1;
      out.push_back(static_cast<std::uint32_t>(p));
      for (std::uint64_t j = p * p / 2; j < composite.size(); j += p) composite[j] = 1;
    }
    return out;
  }

  std::mutex mutex_;
  std::shared_ptr<const BaseList> list_;
  std::uint64_t bound_ = 0;
};

BasePrimes& base_primes() {
  static BasePrimes instance;
  return instance;
}

// Primes of [lo, hi) appended to out. `base` holds odd primes covering sqrt(hi).
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const BaseList& base,
                   std::vector<std::uint64_t>& out) {
  if (hi <= lo) return;
  if (lo <= 2 && 2 < hi) out.push_back(2);
  const std::uint64_t first_odd = lo | 1;
  if (first_odd >= hi) return;
  const std::uint64_t nbits = (hi - first_odd + 1) / 2;
  std::vector<std::uint64_t> bits((nbits + 63) / 64, 0);  // 1 = composite

  for (const std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    const std::uint64_t pp = p * p;
    if (pp >= hi) break;
    std::uint64_t m = (first_odd + p - 1) / p * p;
    if ((m & 1) == 0) m += p;
    const std::uint64_t start = std::max(pp, m);
    for (std::uint64_t i = (start - first_odd) / 2; i < nbits; i += p) {
      bits[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }
  if (first_odd == 1) bits[0] |= 1;  // 1 is not prime

  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = ~bits[w];
    if (w + 1 == bits.size() && (nbits & 63) != 0) word &= (std::uint64_t{1} << (nbits & 63)) - 1;
    while (word != 0) {
      const int b = std::countr_zero(word);
      out.push_back(first_odd + 2 * (w * 64 + static_cast<std::uint64_t>(b)));
      word &= word - 1;
    }
  }
}

void check_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) throw DomainError("empty prime range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  if (hi > kPrimeCeiling) throw DomainError("prime range exceeds 2^63");
}

std::uint64_t estimated_bytes(std::uint64_t lo, std::uint64_t hi) {
  // Montgomery–Vaughan: pi(x + y) - pi(x) <= 2y / log y.
  const double y = static_cast<double>(hi - lo);
  const double count = y < 16 ? y : 2.0 * y / std::log(y);
  const double base = 4.0 * 2.0 * std::sqrt(static_cast<double>(hi)) / std::max(1.0, std::log(std::sqrt(static_cast<double>(hi))));
  return static_cast<std::uint64_t>(8.0 * count + base);
}

// Lucy Hedgehog's O(x^{3/4}) prime counting.
std::uint64_t lucy_count(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  std::vector<std::uint64_t> values;
  values.reserve(2 * r + 1);
  for (std::uint64_t i = 1; i <= r; ++i) values.push_back(n / i);
  for (std::uint64_t v = values.back() - 1; v >= 1; --v) values.push_back(v);
  const std::size_t len = values.size();
  std::vector<std::uint64_t> count(len);
  for (std::size_t i = 0; i < len; ++i) count[i] = values[i] - 1;
  auto idx = [&](std::uint64_t v) -> std::size_t {
    return v <= r ? len - static_cast<std::size_t>(v) : static_cast<std::size_t>(n / v - 1);
  };
  for (std::uint64_t p = 2; p <= r; ++p) {
    if (count[idx(p)] == count[idx(p - 1)]) continue;
    const std::uint64_t below = count[idx(p - 1)];
    const std::uint64_t pp = p * p;
    for (std::size_t i = 0; i < len && values[i] >= pp; ++i) {
      count[i] -= count[idx(values[i] / p)] - below;
    }
  }
  return count[idx(n)];
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

void for_each_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config,
                      const std::function<void(std::span<const std::uint64_t>)>& visit) {
  if (lo >= hi) return;
  if (hi > kPrimeCeiling) throw DomainError("prime range exceeds 2^63");
  if (config.segment_size < 128) throw DomainError("segment size must be at least 128");
  const auto base = base_primes().upto(isqrt(hi - 1) + 1);
  const unsigned workers = std::max(1u, config.threads);
  const std::uint64_t seg = config.segment_size;

  std::vector<std::vector<std::uint64_t>> batch(workers);
  std::uint64_t cursor = lo;
  while (cursor < hi) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (unsigned w = 0; w < workers && cursor < hi; ++w) {
      const std::uint64_t end = hi - cursor > seg ? cursor + seg : hi;
      ranges.emplace_back(cursor, end);
      cursor = end;
    }
    for (auto& v : batch) v.clear();
    if (ranges.size() == 1) {
      sieve_segment(ranges[0].first, ranges[0].second, *base, batch[0]);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t i = 1; i < ranges.size(); ++i) {
        pool.emplace_back([&, i] { sieve_segment(ranges[i].first, ranges[i].second, *base, batch[i]); });
      }
      sieve_segment(ranges[0].first, ranges[0].second, *base, batch[0]);
    }
    for (std::size_t i = 0; i < ranges.size(); ++i) visit(batch[i]);
  }
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  check_range(lo, hi);
  if (estimated_bytes(lo, hi) > config.memory_budget) {
    throw ResourceError("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        ") exceeds the sieve memory budget");
  }
  std::vector<std::uint64_t> out;
  for_each_segment(lo, hi, config, [&](std::span<const std::uint64_t> ps) {
    out.insert(out.end(), ps.begin(), ps.end());
  });
  return out;
}

PrimeSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  PrimeSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.primes = primes_between(lo, hi, config);
  seg.first_index = lo <= 2 ? 1 : 1 + prime_count(lo - 1);
  return seg;
}

std::uint64_t prime_count(std::uint64_t x) {
  if (x < 2) return 0;
  if (x <= (std::uint64_t{1} << 24)) {
    std::uint64_t n = 0;
    for_each_segment(0, x + 1, {}, [&](std::span<const std::uint64_t> ps) { n += ps.size(); });
    return n;
  }
  if (x > 10'000'000'000'000ull) throw ResourceError("prime counting above 1e13 is out of budget");
  return lucy_count(x);
}

std::uint64_t prev_prime(std::uint64_t n) {
  if (n < 2) throw DomainError("prev_prime requires an argument >= 2");
  if (n >= kPrimeCeiling) throw DomainError("prev_prime argument exceeds 2^63");
  const double ln = std::log(static_cast<double>(n));
  // A few mean gaps; doubled until a prime turns up.
  std::uint64_t width = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(std::ceil(8.0 * ln)));
  std::uint64_t hi = n + 1;
  for (;;) {
    const std::uint64_t lo = hi > width ? hi - width : 0;
    std::vector<std::uint64_t> found;
    const auto base = base_primes().upto(isqrt(hi - 1) + 1);
    sieve_segment(lo, hi, *base, found);
    if (!found.empty()) return found.back();
    hi = lo;
    width *= 2;
  }
}

std::uint64_t prev_prime(double y) {
  if (!(y >= 2.0)) throw DomainError("prev_prime requires y >= 2");
  if (y >= static_cast<double>(kPrimeCeiling)) throw DomainError("prev_prime argument exceeds 2^63");
  return prev_prime(static_cast<std::uint64_t>(std::floor(y)));
}

std::uint64_t nth_prime(std::uint64_t k) {
  if (k == 0) throw DomainError("prime ordinals start at 1");
  const double kd = static_cast<double>(k);
  const double bound = k < 6 ? 13.0 : kd * (std::log(kd) + std::log(std::log(kd))) + 1.0;
  if (bound >= static_cast<double>(kPrimeCeiling)) throw DomainError("p_k exceeds 2^63");
  std::uint64_t seen = 0;
  std::uint64_t result = 0;
  const auto hi = static_cast<std::uint64_t>(bound) + 1;
  // Segments stream in order; stop copying once the ordinal is reached.
  for_each_segment(0, hi, {}, [&](std::span<const std::uint64_t> ps) {
    if (result != 0) return;
    if (seen + ps.size() >= k) {
      result = ps[k - seen - 1];
    }
    seen += ps.size();
  });
  if (result == 0) throw InvariantViolation("nth_prime upper bound too small");
  return result;
}

std::uint64_t prime_index(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  return prime_count(p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeTable::PrimeTable(std::uint64_t limit, const SieveConfig& config)
    : limit_(limit), primes_(limit >= 2 ? primes_between(0, limit + 1, config) : std::vector<std::uint64_t>{}) {}

std::uint64_t PrimeTable::nth(std::uint64_t k) const {
  if (k == 0 || k > primes_.size()) {
    throw DomainError("ordinal " + std::to_string(k) + " outside table of " + std::to_string(primes_.size()) + " primes");
  }
  return primes_[k - 1];
}

std::uint64_t PrimeTable::index_of(std::uint64_t p) const {
  if (p > limit_) throw DomainError("prime " + std::to_string(p) + " above table limit");
  const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) throw DomainError(std::to_string(p) + " is not prime");
  return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
}

std::uint64_t PrimeTable::count_upto(std::uint64_t x) const {
  if (x > limit_) throw DomainError("count above table limit");
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::uint64_t PrimeTable::prev(std::uint64_t x) const {
  if (x < 2) throw DomainError("prev requires x >= 2");
  return nth(count_upto(x));
}

GapReport gap_scan(std::uint64_t limit, const std::function<void(const GapSample&)>& visit,
                   const SieveConfig& config) {
  if (limit < 3) throw DomainError("gap_scan requires limit >= 3");
  GapReport report;
  std::uint64_t prev = 0;
  for_each_segment(0, limit, config, [&](std::span<const std::uint64_t> ps) {
    for (const std::uint64_t p : ps) {
      if (prev != 0) {
        GapSample s{prev, p - prev, 0.0};
        s.normalized = static_cast<double>(s.gap) * std::log(static_cast<double>(prev)) / static_cast<double>(prev);
        ++report.pairs;
        if (s.normalized > report.max_normalized) {
          report.max_normalized = s.normalized;
          report.max_normalized_p = prev;
        }
        if (s.gap > report.max_gap) {
          report.max_gap = s.gap;
          report.max_gap_p = prev;
        }
        if (visit) visit(s);
      }
      prev = p;
    }
  });
  return report;
}

}  // namespace glab
