#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/extremal.hpp"
#include "glab/gronwall.hpp"
#include "oracles.hpp"

using glab::BigInt;
using glab::DDReal;
namespace gw = glab::gronwall;

namespace {

double d(const DDReal& x) { return x.to_double(); }

// sign(sigma / (N log log N) - e^gamma) at 400 bits from the enumerated sigma.
int oracle_sign(std::uint64_t N) {
  oracle::Mp g(400), eg(400), t(400);
  mpfr_set_ui(t.v, static_cast<unsigned long>(N), MPFR_RNDN);
  mpfr_log(t.v, t.v, MPFR_RNDN);
  mpfr_log(t.v, t.v, MPFR_RNDN);
  mpfr_mul_ui(t.v, t.v, static_cast<unsigned long>(N), MPFR_RNDN);
  mpfr_set_ui(g.v, static_cast<unsigned long>(oracle::sigma_enum(N)), MPFR_RNDN);
  mpfr_div(g.v, g.v, t.v, MPFR_RNDN);
  mpfr_const_euler(eg.v, MPFR_RNDN);
  mpfr_exp(eg.v, eg.v, MPFR_RNDN);
  return mpfr_cmp(g.v, eg.v);
}

}  // namespace

TEST_CASE("sigma: examples") {
  CHECK(gw::sigma(1) == 1);
  CHECK(gw::sigma(12) == 28);
  CHECK(gw::sigma(5040) == 19344);
  CHECK(gw::sigma(std::uint64_t{1} << 62) == (BigInt(1) << 63) - 1);
  // 2^64 - 59 is prime.
  CHECK(gw::sigma(18446744073709551557ull) == BigInt("18446744073709551558"));
  // Highly composite: sigma exceeds 2^64.
  CHECK(gw::sigma(18401055938125660800ull) > BigInt("18446744073709551616"));
  CHECK_THROWS_AS(gw::sigma(0), glab::DomainError);
}

TEST_CASE("factorize: products reproduce n") {
  for (const std::uint64_t n : {2ull, 97ull, 5040ull, 999999000001ull, 18446744073709551557ull,
                                 4611686014132420609ull /* (2^31-1)^2 */, 18401055938125660800ull}) {
    BigInt prod = 1;
    std::uint64_t prev = 0;
    for (const auto& [p, e] : gw::factorize(n)) {
      CHECK(p > prev);
      if (p < 1'000'000'000'000ull) CHECK(oracle::is_prime_td(p));
      prev = p;
      for (std::uint32_t i = 0; i < e; ++i) prod *= static_cast<unsigned long>(p);
    }
    CHECK(prod == BigInt(std::to_string(n)));
  }
}

TEST_CASE("sigma: formula equals divisor enumeration for N <= 1e4") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    if (gw::sigma(n) != oracle::sigma_enum(n)) FAIL("mismatch at " << n);
  }
}

TEST_CASE("sigma: sieve equals formula for N <= 1e5") {
  std::vector<std::uint64_t> s(100000);
  gw::divisor_sums(1, 100001, s);
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    if (gw::sigma(n) != static_cast<unsigned long>(s[n - 1])) FAIL("mismatch at " << n);
  }
  // An interior window agrees with the full sieve.
  std::vector<std::uint64_t> w(777);
  gw::divisor_sums(54321, 54321 + 777, w);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == s[54320 + i]);
}

TEST_CASE("sigma: multiplicative on every coprime pair a, b <= 1e4") {
  constexpr std::uint64_t kB = 10000;
  std::vector<std::uint64_t> small(kB);
  gw::divisor_sums(1, kB + 1, small);
  constexpr std::uint64_t kWindow = 1 << 22;
  std::vector<std::uint64_t> win(kWindow);
  std::uint64_t pairs = 0;
  bool ok = true;
  for (std::uint64_t lo = 1; lo <= kB * kB; lo += kWindow) {
    const std::uint64_t hi = std::min(lo + kWindow, kB * kB + 1);
    gw::divisor_sums(lo, hi, std::span(win.data(), hi - lo));
    for (std::uint64_t a = 1; a <= kB; ++a) {
      const std::uint64_t b0 = std::max<std::uint64_t>(1, (lo + a - 1) / a);
      const std::uint64_t b1 = std::min(kB, (hi - 1) / a);
      for (std::uint64_t b = b0; b <= b1; ++b) {
        if (std::gcd(a, b) != 1) continue;
        ++pairs;
        if (win[a * b - lo] != small[a - 1] * small[b - 1]) ok = false;
      }
    }
  }
  CHECK(ok);
  CHECK(pairs > 60'000'000);
}

TEST_CASE("gronwall_G: examples") {
  const auto g3 = gw::gronwall_G(3);
  CHECK(std::abs(d(g3.G) - 14.177) < 1e-3);
  CHECK(d(g3.G) == doctest::Approx(4.0 / (3.0 * std::log(std::log(3.0)))).epsilon(1e-14));
  const auto g = gw::gronwall_G(5040);
  CHECK(g.sigma == 19344);
  CHECK(std::abs(d(g.G) - 1.7910) < 1e-4);
  CHECK(DDReal(0.0) < g.margin);
  const auto g12 = gw::gronwall_G(12);
  CHECK(std::abs(d(g12.G) - 2.5635) < 1e-4);
  CHECK(gw::gronwall_G(5041).margin < DDReal(0.0));
  CHECK_THROWS_AS(gw::gronwall_G(2), glab::DomainError);
  CHECK_THROWS_AS(gw::gronwall_G(1), glab::DomainError);
}

TEST_CASE("gronwall_G: margin agrees with MPFR in sign and to pair accuracy") {
  for (const std::uint64_t n : {3ull, 5040ull, 10080ull, 55440ull, 720720ull, 367567200ull, 18401055938125660800ull}) {
    const auto r = gw::gronwall_G(n);
    const auto hp = gw::margin_high_precision(n, r.sigma, 256);
    CHECK(std::abs(d(r.margin - hp.to_dd())) < 1e-28);
    CHECK(gw::margin_sign_high_precision(n, r.sigma) == (r.margin < DDReal(0.0) ? -1 : 1));
  }
}

TEST_CASE("rri_scan: 1e4 against the enumeration oracle") {
  const auto rep = gw::rri_scan(10000);
  std::vector<std::uint64_t> want;
  for (std::uint64_t n = 3; n <= 10000; ++n)
    if (oracle_sign(n) >= 0) want.push_back(n);
  CHECK(rep.violators == want);
  CHECK(rep.max_violator == 5040);
  CHECK_FALSE(rep.violator_above_threshold());
  CHECK(std::find(rep.violators.begin(), rep.violators.end(), 12) != rep.violators.end());
  CHECK_THROWS_AS(gw::rri_scan(2), glab::DomainError);
  CHECK_THROWS_AS(gw::rri_scan(gw::kMaxScanLimit + 1), glab::DomainError);
}

TEST_CASE("rri_scan: violator sets agree on the common range; threads do not matter") {
  const auto a = gw::rri_scan(10000);
  const auto b = gw::rri_scan(300000, 1);
  const auto c = gw::rri_scan(300000, 4);
  const auto e = gw::rri_scan(123457, 3);
  CHECK(b.violators == c.violators);
  CHECK(b.escalations == c.escalations);
  CHECK(b.near_misses.size() == c.near_misses.size());
  std::vector<std::uint64_t> b_cut;
  for (const auto v : b.violators) if (v <= 10000) b_cut.push_back(v);
  CHECK(a.violators == b_cut);
  CHECK(e.violators == b_cut);
  CHECK(b.max_violator == 5040);
}

TEST_CASE("rri_scan: 64-digit re-evaluation of violators and near misses") {
  const auto rep = gw::rri_scan(1'000'000);
  constexpr mpfr_prec_t k64 = 213;  // 64 decimal digits
  for (const auto v : rep.violators) CHECK(gw::margin_sign_high_precision(v, gw::sigma(v), k64) > 0);
  for (const auto& nm : rep.near_misses) {
    const bool listed = std::find(rep.violators.begin(), rep.violators.end(), nm.N) != rep.violators.end();
    const int s = gw::margin_sign_high_precision(nm.N, gw::sigma(nm.N), k64);
    CHECK(s == nm.sign);
    CHECK(listed == (s > 0));
  }
  MESSAGE("violators to 1e6: " << rep.violators.size() << ", near misses: " << rep.near_misses.size());
  // The band is empty at this scale, so also re-decide the closest non-violators.
  std::vector<std::pair<double, std::uint64_t>> closest;
  for (std::uint64_t n = 3; n <= 100000; ++n) {
    if (std::find(rep.violators.begin(), rep.violators.end(), n) != rep.violators.end()) continue;
    closest.emplace_back(std::abs(d(gw::gronwall_G(n).margin)), n);
  }
  std::partial_sort(closest.begin(), closest.begin() + 25, closest.end());
  for (std::size_t i = 0; i < 25; ++i) {
    const std::uint64_t n = closest[i].second;
    CHECK(gw::margin_sign_high_precision(n, gw::sigma(n), k64) < 0);
  }
}

TEST_CASE("max_g: k = 4 matches an exhaustive search") {
  // Every N = 2^a 3^b 5^c 7^e with e >= 1 and log N <= 40.
  const double lp[] = {std::log(2.0), std::log(3.0), std::log(5.0), std::log(7.0)};
  double best = -1e300;
  std::vector<std::uint32_t> best_e;
  for (std::uint32_t a = 0; a * lp[0] <= 40; ++a)
    for (std::uint32_t b = 0; a * lp[0] + b * lp[1] <= 40; ++b)
      for (std::uint32_t c = 0; a * lp[0] + b * lp[1] + c * lp[2] <= 40; ++c)
        for (std::uint32_t e = 1; a * lp[0] + b * lp[1] + c * lp[2] + e * lp[3] <= 40; ++e) {
          const double logN = a * lp[0] + b * lp[1] + c * lp[2] + e * lp[3];
          if (logN < std::log(3.0)) continue;
          double ls = 0.0;
          const std::uint32_t ex[] = {a, b, c, e};
          const double p[] = {2, 3, 5, 7};
          for (int i = 0; i < 4; ++i) ls += std::log((std::pow(p[i], ex[i] + 1) - 1) / (p[i] - 1));
          const double lg = ls - logN - std::log(std::log(logN));
          if (lg > best) { best = lg; best_e = {a, b, c, e}; }
        }
  const auto r = gw::max_g(4, 100000);
  CHECK(r.converged);
  CHECK(r.best.expand() == best_e);
  CHECK(d(r.log_G) == doctest::Approx(best).epsilon(1e-12));
  CHECK(std::abs(d(r.log_G) - 0.590345) < 1e-6);
  CHECK_THROWS_AS(gw::max_g(1, 10), glab::DomainError);
  CHECK_THROWS_AS(gw::max_g(10, 0), glab::DomainError);
}

TEST_CASE("max_g: at least the extremal certificate, monotone in the budget") {
  for (const std::uint64_t k : {10ull, 25ull, 100ull, 1000ull}) {
    const auto cert = glab::extremal::construct(k);
    const auto r = gw::max_g(k, 1'000'000);
    CHECK(cert.log_G <= r.log_G);
    CHECK(r.seed_log_G <= r.log_G);
    CHECK(std::isfinite(d(r.a_k)));
    DDReal prev(-1e300);
    for (const std::uint64_t budget : {1ull, 10ull, 100ull, 1000ull, 100000ull}) {
      const auto b = gw::max_g(k, budget);
      CHECK(prev <= b.log_G);
      CHECK(b.evaluations <= budget);
      prev = b.log_G;
    }
  }
  const auto small = gw::max_g(200, 3);
  CHECK_FALSE(small.converged);
  // The log G of the returned vector is what it claims.
  const auto r = gw::max_g(50, 100000);
  const auto ps = oracle::primes_upto(300);
  const auto e = r.best.expand();
  CHECK(d(gw::log_G_of(e, std::span(ps.data(), e.size())) - r.log_G) == 0.0);
}
