#include "glab/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/primes.hpp"

namespace glab::gronwall {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) {
      const std::uint64_t s = mulmod(v, v, n);
      return s >= n - c ? s - (n - c) : s + c;
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

DDReal loglog(std::uint64_t N) { return log(log(DDReal(N))); }

}  // namespace

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize(0) is undefined");
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  auto take = [&](std::uint64_t p) {
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  take(2);
  take(3);
  for (std::uint64_t p = 5; p < 1000 && p * p <= n; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) {
    std::vector<std::uint64_t> rest;
    split(n, rest);
    std::sort(rest.begin(), rest.end());
    for (const std::uint64_t p : rest) {
      if (!out.empty() && out.back().first == p) {
        ++out.back().second;
      } else {
        out.emplace_back(p, 1);
      }
    }
  }
  return out;
}

BigInt sigma(std::uint64_t n) {
  BigInt s = 1;
  for (const auto& [p, e] : factorize(n)) {
    BigInt pe;
    const BigInt bp = static_cast<unsigned long>(p);
    mpz_pow_ui(pe.get_mpz_t(), bp.get_mpz_t(), e + 1);
    s *= (pe - 1) / (bp - 1);
  }
  return s;
}

BigInt sigma(const extremal::FactoredInteger& n, std::span<const std::uint64_t> primes) {
  if (n.size() > primes.size()) throw DomainError("factorization needs more primes than supplied");
  BigInt s = 1;
  for (const auto& [j, e] : n.factors()) {
    BigInt pe;
    const BigInt bp = static_cast<unsigned long>(primes[j - 1]);
    mpz_pow_ui(pe.get_mpz_t(), bp.get_mpz_t(), e + 1);
    s *= (pe - 1) / (bp - 1);
  }
  return s;
}

GronwallRecord gronwall_G(std::uint64_t N) {
  if (N < 3) throw DomainError("G(N) needs N >= 3 (log log N must be positive)");
  GronwallRecord rec;
  rec.N = N;
  rec.sigma = sigma(N);
  const DDReal s = DDReal::from_pair(mpz_get_d(rec.sigma.get_mpz_t()), 0.0);
  // sigma may pass 2^64: split into a double head and an exact residual.
  const BigInt rest = rec.sigma - BigInt(s.hi());
  const DDReal exact_sigma = s + mpz_get_d(rest.get_mpz_t());
  rec.G = exact_sigma / (DDReal(N) * loglog(N));
  rec.margin = rec.G - constants().exp_gamma;
  return rec;
}

BigFloat margin_high_precision(std::uint64_t N, const BigInt& sigma, mpfr_prec_t bits) {
  const BigFloat n = BigFloat::from_u64(N, bits);
  const BigFloat G = BigFloat::from_int(sigma, bits) / (n * log(log(n)));
  return G - exp(BigFloat::euler_gamma(bits));
}

int margin_sign_high_precision(std::uint64_t N, const BigInt& sigma, mpfr_prec_t bits) {
  return margin_high_precision(N, sigma, bits).sign();
}

void divisor_sums(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out) {
  if (lo < 1 || hi <= lo) throw DomainError("divisor_sums needs 1 <= lo < hi");
  if (out.size() != hi - lo) throw DomainError("output span does not match the window");
  std::fill(out.begin(), out.end(), 0);
  for (std::uint64_t d = 1; d * d < hi; ++d) {
    // multiples n = m d with m >= d inside [lo, hi)
    std::uint64_t m = std::max(d, (lo + d - 1) / d);
    for (std::uint64_t n = m * d; n < hi; n += d, ++m) {
      out[n - lo] += m == d ? d : d + m;
    }
  }
}

ViolatorReport rri_scan(std::uint64_t limit, unsigned threads) {
  if (limit < 3 || limit > kMaxScanLimit) throw DomainError("rri_scan needs 3 <= limit <= 10^9");
  threads = std::max(1u, threads);
  ViolatorReport rep;
  rep.limit = limit;
  const DDReal eg = constants().exp_gamma;
  const double eg_d = eg.to_double();

  constexpr std::uint64_t kWindow = std::uint64_t{1} << 16;
  const std::uint64_t end = limit + 1;
  struct Candidate {
    std::uint64_t n;
    std::uint64_t sigma;
  };
  std::vector<std::vector<Candidate>> found(threads);
  for (std::uint64_t base = 3; base < end; base += kWindow * threads) {
    auto work = [&](unsigned w) {
      found[w].clear();
      const std::uint64_t lo = base + kWindow * w;
      if (lo >= end) return;
      const std::uint64_t hi = std::min(end, lo + kWindow);
      std::vector<std::uint64_t> s(hi - lo);
      divisor_sums(lo, hi, s);
      for (std::uint64_t n = lo; n < hi; ++n) {
        const double nd = static_cast<double>(n);
        const double G = static_cast<double>(s[n - lo]) / (nd * std::log(std::log(nd)));
        // Double screen: anything within 1e-9 relative goes to pair precision.
        if (G > eg_d * (1.0 - 1e-9)) found[w].push_back({n, s[n - lo]});
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    for (const auto& list : found) {
      for (const Candidate& c : list) {
        ++rep.escalations;
        const DDReal G = DDReal(c.sigma) / (DDReal(c.n) * loglog(c.n));
        const DDReal margin = G - eg;
        const BigInt s = static_cast<unsigned long>(c.sigma);
        const bool near = std::abs(margin.to_double()) < kExactnessBand;
        int sign = margin.hi() >= 0.0 ? 1 : -1;
        if (near || sign > 0) {
          // Every violator and every near miss is decided at 256 bits.
          sign = margin_sign_high_precision(c.n, s);
        }
        if (near) rep.near_misses.push_back({c.n, margin.to_double(), sign});
        if (sign >= 0) {
          rep.violators.push_back(c.n);
          rep.max_violator = c.n;
        }
      }
    }
  }
  return rep;
}

}  // namespace glab::gronwall
