#include <doctest.h>

#include <cmath>
#include <vector>

#include "glab/errors.hpp"
#include "glab/extremal.hpp"
#include "glab/io.hpp"
#include "glab/mertens.hpp"
#include "oracles.hpp"

using glab::DDReal;
namespace ex = glab::extremal;

namespace {

const ex::LemmaContext& ctx() {
  static const ex::LemmaContext c(100000);
  return c;
}

double d(const DDReal& x) { return x.to_double(); }

// Exponents straight from the construction's definition, using only doubles
// and trial division where floors are not near-integers.
std::vector<std::uint32_t> reference_exponents(std::uint64_t k) {
  const auto ps = oracle::primes_upto(20000);
  const std::uint64_t pk = ps[k - 1];
  const int r = static_cast<int>(std::floor(std::sqrt(std::log(2.0 * static_cast<double>(pk)))));
  std::vector<std::uint64_t> q(static_cast<std::size_t>(r) + 1);
  q[1] = pk;
  for (int m = 2; m <= r; ++m) {
    std::uint64_t best = 2;
    for (const auto p : ps) {
      std::uint64_t pw = 1;
      for (int i = 0; i < m; ++i) pw *= p;
      if (pw > 2 * pk) break;
      best = p;
    }
    q[static_cast<std::size_t>(m)] = best;
  }
  std::vector<std::uint32_t> alpha(k);
  for (std::uint64_t j = 1; j <= k; ++j) {
    const std::uint64_t p = ps[j - 1];
    if (p < q[static_cast<std::size_t>(r)]) {
      // floor(log H / log p) - 1 with H = q_r^(r+1), by exact integer powers.
      unsigned __int128 H = 1;
      for (int i = 0; i <= r; ++i) H *= q[static_cast<std::size_t>(r)];
      std::uint32_t e = 0;
      unsigned __int128 pw = p;
      while (pw <= H) { ++e; pw *= p; }
      alpha[j - 1] = e - 1;
    } else {
      std::uint32_t m = 0;
      for (int i = 1; i <= r; ++i)
        if (q[static_cast<std::size_t>(i)] >= p) m = static_cast<std::uint32_t>(i);
      alpha[j - 1] = m;
    }
  }
  return alpha;
}

}  // namespace

TEST_CASE("k_min and the unsupported regime") {
  CHECK(ex::k_min() == 10);
  CHECK(ex::r_of(29) == 2);
  try {
    ex::construct(9, ctx());
    FAIL("expected UnsupportedRegime");
  } catch (const glab::UnsupportedRegime& e) {
    CHECK(e.k_min() == 10);
    CHECK(std::string(e.what()).find("10") != std::string::npos);
  }
  CHECK_THROWS_AS(ex::construct(ctx().max_k() + 1, ctx()), glab::DomainError);
}

TEST_CASE("construct: k = 25 example") {
  const auto c = ex::construct(25, ctx());
  CHECK(c.p_k == 97);
  CHECK(c.r == 2);
  CHECK(c.q == std::vector<std::uint64_t>{97, 13});
  CHECK(c.nu == 6);
  CHECK(d(c.log_H) == doctest::Approx(3.0 * std::log(13.0)).epsilon(1e-15));
  std::vector<std::uint32_t> want = {10, 6, 3, 2, 2, 2};
  want.resize(25, 1);
  CHECK(c.N_star.expand() == want);
  CHECK(c.N_star.runs() == std::vector<ex::ExponentRun>{{10, 1}, {6, 1}, {3, 1}, {2, 3}, {1, 19}});
  CHECK(d(c.F) == doctest::Approx(8 * std::log(2.0) + 4 * std::log(3.0) + std::log(5.0)).epsilon(1e-14));
  CHECK(std::abs(d(c.F) - 11.54906) < 1e-5);
  CHECK(c.checks.all());
  CHECK(c.checks.failures().empty());
  // Product form: 2 appears once in T(97), once in T(13) and 8 more times.
  const auto pf = ex::product_form_runs(c, ctx());
  CHECK(pf == c.N_star.runs());
  CHECK(c.U_bands.size() == 2);
}

TEST_CASE("construct: exponents agree with an independent evaluation of the definition") {
  for (std::uint64_t k = 10; k <= 2000; k += (k < 200 ? 1 : 37)) {
    const auto c = ex::construct(k, ctx());
    CHECK_MESSAGE(c.N_star.expand() == reference_exponents(k), "k = " << k);
  }
}

TEST_CASE("construct: certificate invariants on a sweep") {
  for (std::uint64_t k = 10; k <= ctx().max_k(); k += (k < 1000 ? 1 : 997)) {
    const auto c = ex::construct(k, ctx());
    CHECK_MESSAGE(c.checks.all(), "k = " << k << " failed: " << c.checks.failures());
    // q strictly decreasing
    for (std::size_t i = 1; i < c.q.size(); ++i) CHECK(c.q[i] < c.q[i - 1]);
    CHECK(c.q.front() == c.p_k);
    const auto alpha = c.N_star.expand();
    for (std::size_t i = 1; i < alpha.size(); ++i) CHECK(alpha[i] <= alpha[i - 1]);
    CHECK(alpha[c.nu - 1] == static_cast<std::uint32_t>(c.r));
    CHECK(ctx().prime(c.nu) == c.q.back());
    CHECK(std::abs(d(c.eta - (c.E + c.F))) <= 1e-20 * std::max(1.0, d(c.eta)));
    CHECK(std::abs(d(c.log_G - (c.S_k - c.U_k - c.V_k))) <= 1e-20);
    for (const auto& u : c.U_bands) CHECK(DDReal(0.0) < u);
    CHECK(DDReal(0.0) < c.gap);
    CHECK(std::isfinite(d(c.scaled_gap)));
  }
}

TEST_CASE("FactoredInteger: log_value recomputes within 1e-25 and runs normalize") {
  for (const std::uint64_t k : {10ul, 25ul, 1000ul, 99999ul}) {
    const auto c = ex::construct(k, ctx());
    oracle::Mp sum(256), t(256);
    for (const auto& [j, e] : c.N_star.factors()) {
      mpfr_set_ui(t.v, static_cast<unsigned long>(ctx().prime(j)), MPFR_RNDN);
      mpfr_log(t.v, t.v, MPFR_RNDN);
      mpfr_mul_ui(t.v, t.v, e, MPFR_RNDN);
      mpfr_add(sum.v, sum.v, t.v, MPFR_RNDN);
    }
    CHECK(oracle::dist(c.N_star.log_value(), sum.v) <= 1e-25 * std::max(1.0, mpfr_get_d(sum.v, MPFR_RNDN)));
    std::uint64_t prev = 0;
    for (const auto& [j, e] : c.N_star.factors()) {
      CHECK(j > prev);
      CHECK(e >= 1);
      prev = j;
    }
  }
  CHECK(ex::FactoredInteger::normalize({{3, 2}, {3, 1}, {2, 0}, {1, 4}}) ==
        std::vector<ex::ExponentRun>{{3, 3}, {1, 4}});
  const std::vector<std::uint32_t> e = {4, 4, 2, 1, 1, 1};
  CHECK(ex::FactoredInteger::encode(e) == std::vector<ex::ExponentRun>{{4, 2}, {2, 1}, {1, 3}});
}

TEST_CASE("U_k summed prime by prime equals the banded evaluation") {
  for (const std::uint64_t k : {10ul, 11ul, 25ul, 168ul, 1229ul, 9592ul, 78498ul, 99999ul}) {
    const auto c = ex::construct(k, ctx());
    CHECK(std::abs(d(ex::direct_U(c, ctx()) - c.U_k)) < 1e-25);
  }
}

TEST_CASE("band bracket with tails from the mertens module") {
  for (const std::uint64_t k : {25ul, 500ul, 5000ul, 50000ul}) {
    const auto c = ex::construct(k, ctx());
    for (int m = 1; m < c.r; ++m) {
      const double hi_q = static_cast<double>(c.q[static_cast<std::size_t>(m) - 1]);
      const double lo_q = static_cast<double>(c.q[static_cast<std::size_t>(m)]);
      const DDReal base = glab::mertens::prime_zeta_tail(lo_q, m + 1).Y - glab::mertens::prime_zeta_tail(hi_q, m + 1).Y;
      const DDReal extra = glab::mertens::prime_zeta_tail(lo_q, 2 * m + 2).Y;
      const DDReal u = c.U_bands[static_cast<std::size_t>(m) - 1];
      CHECK(base < u);
      CHECK(u < base + extra);
    }
    const double pk = static_cast<double>(c.p_k);
    CHECK(d(c.U_bands.back()) < 3.0 / std::pow(2.0 * pk, 1.0 - 1.0 / c.r));
  }
}

TEST_CASE("bigint_verify: every valid k up to 100") {
  for (std::uint64_t k = ex::k_min(); k <= 100; ++k) {
    const auto b = ex::bigint_verify(k, ctx());
    CHECK_MESSAGE(b.passed(1e-12), "k = " << k << " diff = " << b.log_G_diff);
    CHECK(b.exponents_match);
    CHECK(b.product_form_match);
    CHECK(b.multiplicativity);
    CHECK(b.sigma_ratio_diff < 1e-12);
  }
  const auto b25 = ex::bigint_verify(25, ctx());
  CHECK(b25.log_G_diff < 1e-12);
  CHECK(b25.digits > 10);
  CHECK_THROWS_AS(ex::bigint_verify(50000, ctx()), glab::ResourceError);
}

TEST_CASE("certificate JSON round trip") {
  for (const std::uint64_t k : {10ul, 25ul, 4321ul}) {
    const auto c = ex::construct(k, ctx());
    const auto j = glab::io::to_json(c);
    REQUIRE(j.contains("N_star"));
    CHECK(j["N_star"]["exponents"].is_array());
    const auto back = glab::io::certificate_from_json(j);
    CHECK(back.k == c.k);
    CHECK(back.p_k == c.p_k);
    CHECK(back.r == c.r);
    CHECK(back.q == c.q);
    CHECK(back.nu == c.nu);
    CHECK(back.N_star.runs() == c.N_star.runs());
    CHECK(back.U_bands.size() == c.U_bands.size());
    CHECK(std::abs(d(back.log_G - c.log_G)) < 1e-19);
    CHECK(std::abs(d(back.scaled_gap - c.scaled_gap)) <= 1e-19 * std::abs(d(c.scaled_gap)));
    CHECK(glab::io::to_json(back) == j);
  }
}

TEST_CASE("scan_lemma: ordered, checked, thread count independent") {
  std::vector<std::uint64_t> seen;
  std::vector<double> gaps;
  const auto s1 = ex::scan_lemma(10, 5000, 7, [&](const ex::ExtremalCertificate& c) {
    seen.push_back(c.k);
    gaps.push_back(d(c.scaled_gap));
  }, ctx(), 1);
  CHECK(s1.failed == 0);
  CHECK(s1.certificates == seen.size());
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] == seen[i - 1] + 7);
  std::vector<double> gaps4;
  const auto s4 = ex::scan_lemma(10, 5000, 7, [&](const ex::ExtremalCertificate& c) { gaps4.push_back(d(c.scaled_gap)); },
                                 ctx(), 4);
  CHECK(gaps == gaps4);
  CHECK(s1.last_decade_mean_scaled_gap == s4.last_decade_mean_scaled_gap);
  CHECK(s1.scaled_gap_min > 0.0);
  CHECK(s1.scaled_gap_max < 6.0);
}

TEST_CASE("full range to p_k <= 1e6: C_k near sqrt 2 over the last decade") {
  const ex::LemmaContext big(78498);
  const auto s = ex::scan_lemma(ex::k_min(), 78498, 1, {}, big, 1);
  CHECK(s.failed == 0);
  CHECK(std::abs(s.last_decade_mean_C_k - std::sqrt(2.0)) < 0.2);
  CHECK(s.last_decade_count > 60000);
  MESSAGE("C_k mean " << s.last_decade_mean_C_k << ", eta ratio " << s.last_eta_ratio << ", U1 ratio "
                      << s.last_U1_ratio << ", fitted C2 " << s.fitted_C2);
}
