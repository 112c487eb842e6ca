#include "glab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "glab/accumulator.hpp"
#include "glab/bigfloat.hpp"
#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/mertens.hpp"

namespace glab::extremal {

namespace {

using u128 = unsigned __int128;

// -log(1 - p^-e)
DDReal u_term(std::uint64_t p, std::uint32_t e) {
  return -log1p(-inverse_power(p, DDReal(static_cast<double>(e))));
}

constexpr double kSplitTol = 1e-20;

}  // namespace

// ---- FactoredInteger ----

FactoredInteger::FactoredInteger(std::vector<ExponentRun> runs, DDReal log_value)
    : runs_(normalize(std::move(runs))), log_value_(log_value) {}

std::vector<ExponentRun> FactoredInteger::normalize(std::vector<ExponentRun> runs) {
  std::vector<ExponentRun> out;
  out.reserve(runs.size());
  for (const auto& r : runs) {
    if (r.count == 0) continue;
    if (!out.empty() && out.back().value == r.value) {
      out.back().count += r.count;
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<ExponentRun> FactoredInteger::encode(std::span<const std::uint32_t> exponents) {
  std::vector<ExponentRun> runs;
  for (const std::uint32_t e : exponents) runs.push_back({e, 1});
  return normalize(std::move(runs));
}

std::uint64_t FactoredInteger::size() const {
  std::uint64_t n = 0;
  for (const auto& r : runs_) n += r.count;
  return n;
}

std::uint32_t FactoredInteger::exponent(std::uint64_t j) const {
  if (j == 0) throw DomainError("prime ordinals are 1-based");
  std::uint64_t end = 0;
  for (const auto& r : runs_) {
    end += r.count;
    if (j <= end) return r.value;
  }
  throw DomainError("prime ordinal beyond the factorization");
}

std::vector<std::uint32_t> FactoredInteger::expand() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for (const auto& r : runs_) out.insert(out.end(), r.count, r.value);
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> FactoredInteger::factors() const {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  std::uint64_t j = 0;
  for (const auto& r : runs_) {
    for (std::uint64_t i = 0; i < r.count; ++i) out.emplace_back(++j, r.value);
  }
  return out;
}

// ---- Checks ----

bool Checks::all() const { return failures().empty(); }

std::string Checks::failures() const {
  std::string out;
  auto add = [&](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(q_decreasing, "q_decreasing");
  add(exponents_monotone, "exponents_monotone");
  add(alpha_nu, "alpha_nu");
  add(band_property, "band_property");
  add(product_form, "product_form");
  add(eta_split, "eta_split");
  add(log_G_split, "log_G_split");
  add(band_sum, "band_sum");
  add(band_bracket, "band_bracket");
  add(r_band_bound, "r_band_bound");
  add(F_bound, "F_bound");
  add(gap_positive, "gap_positive");
  return out;
}

// ---- helpers ----

int r_of(std::uint64_t p) {
  if (p < 2) throw DomainError("r is defined for primes");
  const DDReal root = sqrt(log(DDReal(2 * p)));
  return static_cast<int>(floor(root).to_double());
}

std::uint64_t integer_root(std::uint64_t x, int m) {
  if (m < 1) throw DomainError("root order must be positive");
  if (m == 1 || x < 2) return x;
  auto pow_le = [&](std::uint64_t n) {
    u128 acc = 1;
    for (int i = 0; i < m; ++i) {
      acc *= n;
      if (acc > x) return false;
    }
    return true;
  };
  auto n = static_cast<std::uint64_t>(std::pow(static_cast<double>(x), 1.0 / m));
  while (n > 0 && !pow_le(n)) --n;
  while (pow_le(n + 1)) ++n;
  return n;
}

std::uint64_t k_min() {
  static const std::uint64_t value = [] {
    const PrimeTable table(1u << 16);
    for (std::uint64_t k = 1; k <= table.size(); ++k) {
      const std::uint64_t p = table.nth(k);
      const int r = r_of(p);
      if (r < 2) continue;
      bool decreasing = true;
      std::uint64_t prev = p;
      for (int m = 2; m <= r; ++m) {
        const std::uint64_t q = table.prev(integer_root(2 * p, m));
        if (q >= prev) decreasing = false;
        prev = q;
      }
      if (decreasing) return k;
    }
    throw InvariantViolation("no supported k found while probing k_min");
  }();
  return value;
}

// ---- LemmaContext ----

LemmaContext::LemmaContext(std::uint64_t max_k, const SieveConfig& config) : max_k_(max_k) {
  if (max_k == 0) throw DomainError("context needs max_k >= 1");
  if (max_k > kMaxK) throw ResourceError("extremal tables are limited to k <= 5000000");
  table_ = std::make_unique<PrimeTable>(nth_prime(max_k), config);
  max_r_ = std::max(1, r_of(table_->nth(max_k)));
  const auto primes = table_->primes();

  log_p_.assign(max_k + 1, DDReal(0.0));
  theta_.assign(max_k + 1, DDReal(0.0));
  S_.assign(max_k + 1, DDReal(0.0));
  bands_.assign(static_cast<std::size_t>(max_r_), std::vector<DDReal>(max_k + 1, DDReal(0.0)));
  Accumulator theta, S;
  std::vector<DDReal> band_sum(static_cast<std::size_t>(max_r_), DDReal(0.0));
  for (std::uint64_t j = 1; j <= max_k; ++j) {
    const std::uint64_t p = primes[j - 1];
    log_p_[j] = log(DDReal(p));
    theta.add(log_p_[j]);
    S.add(mertens::mertens_term(p));
    theta_[j] = theta.value();
    S_[j] = S.value();
    for (int m = 1; m <= max_r_; ++m) {
      auto& acc = band_sum[static_cast<std::size_t>(m - 1)];
      acc += u_term(p, static_cast<std::uint32_t>(m + 1));
      bands_[static_cast<std::size_t>(m - 1)][j] = acc;
    }
  }
  for (int m = 1; m < max_r_; ++m) {
    for (const int lambda : {m + 1, 2 * m + 2}) {
      const bool have = std::any_of(tails_.begin(), tails_.end(),
                                    [&](const auto& t) { return t.first == lambda; });
      if (!have) tails_.emplace_back(lambda, std::make_unique<PrimeZetaTails>(primes, lambda));
    }
  }
}

const DDReal& LemmaContext::band_prefix(int m, std::uint64_t j) const {
  if (m < 1 || m > max_r_) throw DomainError("band order outside the context");
  return bands_[static_cast<std::size_t>(m - 1)][j];
}

DDReal LemmaContext::tail_after(int lambda, std::uint64_t j) const {
  for (const auto& [l, t] : tails_) {
    if (l == lambda) return t->after_index(j);
  }
  throw DomainError("no tail table for lambda = " + std::to_string(lambda));
}

// ---- construction ----

ExtremalCertificate construct(std::uint64_t k, const LemmaContext& ctx) {
  const std::uint64_t kmin = k_min();
  if (k < kmin) {
    throw UnsupportedRegime("construction needs k >= " + std::to_string(kmin) +
                                " (r >= 2 with a strictly decreasing q-sequence)",
                            kmin);
  }
  if (k > ctx.max_k()) throw DomainError("k exceeds the prepared context");

  ExtremalCertificate c;
  c.k = k;
  c.p_k = ctx.prime(k);
  c.r = r_of(c.p_k);
  const int r = c.r;
  if (r < 2) throw UnsupportedRegime("r < 2", kmin);

  // q[m] and its ordinal idx[m], 1-based in m.
  std::vector<std::uint64_t> q(static_cast<std::size_t>(r) + 2, 0);
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(r) + 2, 0);
  q[1] = c.p_k;
  idx[1] = k;
  for (int m = 2; m <= r; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    q[mm] = ctx.table().prev(integer_root(2 * c.p_k, m));
    if (q[mm] >= q[mm - 1]) {
      throw InvariantViolation("q-sequence collision at k = " + std::to_string(k) +
                               ", m = " + std::to_string(m));
    }
    idx[mm] = ctx.table().index_of(q[mm]);
  }
  c.q.assign(q.begin() + 1, q.begin() + r + 1);
  c.checks.q_decreasing = true;
  const std::uint64_t nu = idx[static_cast<std::size_t>(r)];
  const std::uint64_t q_r = q[static_cast<std::size_t>(r)];
  c.nu = nu;
  c.log_H = ctx.log_p(nu) * static_cast<double>(r + 1);

  // alpha_j for j < nu: max e with p_j^e <= H = q_r^(r+1), minus one.
  u128 H = 1;
  for (int i = 0; i <= r; ++i) H *= q_r;
  std::vector<std::uint32_t> head;
  head.reserve(nu);
  for (std::uint64_t j = 1; j < nu; ++j) {
    const std::uint64_t p = ctx.prime(j);
    std::uint32_t e = 0;
    u128 pw = p;
    while (pw <= H) {
      ++e;
      pw *= p;
    }
    head.push_back(e - 1);
  }

  std::vector<ExponentRun> runs;
  for (const std::uint32_t a : head) runs.push_back({a, 1});
  runs.push_back({static_cast<std::uint32_t>(r), 1});
  for (int m = r - 1; m >= 1; --m) {
    const auto mm = static_cast<std::size_t>(m);
    runs.push_back({static_cast<std::uint32_t>(m), idx[mm] - idx[mm + 1]});
  }

  // eta by runs via theta differences.
  Accumulator eta;
  {
    std::uint64_t start = 1;
    for (const auto& run : FactoredInteger::normalize(runs)) {
      const std::uint64_t end = start + run.count - 1;
      eta.add((ctx.theta(end) - ctx.theta(start - 1)) * static_cast<double>(run.value));
      start = end + 1;
    }
  }
  c.eta = eta.value();
  c.N_star = FactoredInteger(runs, c.eta);

  Accumulator E, F;
  for (int m = 1; m <= r; ++m) E.add(ctx.theta(idx[static_cast<std::size_t>(m)]));
  for (std::uint64_t j = 1; j < nu; ++j) {
    F.add(ctx.log_p(j) * static_cast<double>(head[j - 1] - static_cast<std::uint32_t>(r)));
  }
  c.E = E.value();
  c.F = F.value();

  c.theta_pk = ctx.theta(k);
  c.loglog_theta = log(log(c.theta_pk));
  c.S_k = ctx.S(k);

  // U_k run by run: band prefix tables where the exponent is small, direct
  // terms otherwise.
  Accumulator U;
  {
    std::uint64_t start = 1;
    for (const auto& run : c.N_star.runs()) {
      const std::uint64_t end = start + run.count - 1;
      if (static_cast<int>(run.value) <= ctx.max_r()) {
        const int v = static_cast<int>(run.value);
        U.add(ctx.band_prefix(v, end) - ctx.band_prefix(v, start - 1));
      } else {
        for (std::uint64_t j = start; j <= end; ++j) U.add(u_term(ctx.prime(j), run.value + 1));
      }
      start = end + 1;
    }
  }
  c.U_k = U.value();

  // U_{k,m} by the band edges q_{m+1} < p_j <= q_m; the r-th band holds
  // every j <= nu.
  c.U_bands.assign(static_cast<std::size_t>(r), DDReal(0.0));
  for (int m = 1; m < r; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    c.U_bands[mm - 1] = ctx.band_prefix(m, idx[mm]) - ctx.band_prefix(m, idx[mm + 1]);
  }
  {
    Accumulator Ur;
    for (std::uint64_t j = 1; j < nu; ++j) Ur.add(u_term(ctx.prime(j), head[j - 1] + 1));
    Ur.add(u_term(q_r, static_cast<std::uint32_t>(r + 1)));
    c.U_bands[static_cast<std::size_t>(r - 1)] = Ur.value();
  }

  c.V_k = log(log(c.eta));
  c.log_G = c.S_k - c.U_k - c.V_k;
  c.gap = (c.S_k - c.loglog_theta) - c.log_G;
  const DDReal sqrt_p = sqrt(DDReal(c.p_k));
  c.scaled_gap = c.gap * sqrt_p * ctx.log_p(k);
  c.delta_k = c.scaled_gap - constants().two_sqrt2;
  c.C_k = (c.E - c.theta_pk) / sqrt_p;

  // ---- checks ----
  Checks& ch = c.checks;
  {
    const auto& rs = c.N_star.runs();
    bool ok = c.N_star.size() == k && !rs.empty() && rs.back().value >= 1;
    for (std::size_t i = 1; i < rs.size(); ++i) ok = ok && rs[i].value < rs[i - 1].value;
    ch.exponents_monotone = ok;
  }
  ch.alpha_nu = c.N_star.exponent(nu) == static_cast<std::uint32_t>(r) && ctx.prime(nu) == q_r;
  {
    bool ok = true;
    for (int m = 1; m < r && ok; ++m) {
      const auto mm = static_cast<std::size_t>(m);
      const auto mv = static_cast<std::uint32_t>(m);
      ok = c.N_star.exponent(idx[mm]) == mv && c.N_star.exponent(idx[mm + 1] + 1) == mv &&
           c.N_star.exponent(idx[mm + 1]) > mv;
    }
    ch.band_property = ok;
  }
  ch.product_form = product_form_runs(c, ctx) == c.N_star.runs();
  ch.eta_split = abs(c.eta - (c.E + c.F)).to_double() <= kSplitTol;
  {
    Accumulator bands;
    for (const auto& u : c.U_bands) bands.add(u);
    const DDReal band_total = bands.value();
    ch.band_sum = abs(band_total - c.U_k).to_double() <= kSplitTol;
    ch.log_G_split = abs(c.log_G - (c.S_k - band_total - c.V_k)).to_double() <= kSplitTol;
  }
  {
    bool ok = true;
    for (int m = 1; m < r; ++m) {
      const auto mm = static_cast<std::size_t>(m);
      const DDReal lo = ctx.tail_after(m + 1, idx[mm + 1]) - ctx.tail_after(m + 1, idx[mm]);
      const DDReal hi = lo + ctx.tail_after(2 * m + 2, idx[mm + 1]);
      const DDReal& u = c.U_bands[mm - 1];
      ok = ok && lo < u && u < hi;
    }
    ch.band_bracket = ok;
  }
  {
    const DDReal bound =
        DDReal(3.0) / exp(log(DDReal(2 * c.p_k)) * (DDReal(1.0) - DDReal(1.0) / static_cast<double>(r)));
    ch.r_band_bound = c.U_bands.back() < bound;
  }
  {
    const DDReal upper = ctx.log_p(nu) * static_cast<double>(q_r) * static_cast<double>(r + 1);
    ch.F_bound = DDReal(0.0) < c.F && c.F < upper;
  }
  ch.gap_positive = DDReal(0.0) < c.gap;
  return c;
}

ExtremalCertificate construct(std::uint64_t k) {
  const std::uint64_t kmin = k_min();
  if (k < kmin) {
    throw UnsupportedRegime("construction needs k >= " + std::to_string(kmin), kmin);
  }
  const LemmaContext ctx(k);
  return construct(k, ctx);
}

std::vector<ExponentRun> product_form_runs(const ExtremalCertificate& cert, const LemmaContext& ctx) {
  const int r = cert.r;
  std::vector<ExponentRun> runs;
  // p_j^(alpha_j - r) for j < nu on top of the r primorials containing p_j.
  for (std::uint64_t j = 1; j < cert.nu; ++j) {
    const std::uint64_t p = ctx.prime(j);
    std::uint32_t in_primorials = 0;
    for (const std::uint64_t q : cert.q) in_primorials += q >= p ? 1 : 0;
    runs.push_back({in_primorials + cert.N_star.exponent(j) - static_cast<std::uint32_t>(r), 1});
  }
  // For j >= nu only the primorials T(q_m) with q_m >= p_j contribute.
  std::uint64_t j = cert.nu;
  for (int m = r; m >= 1; --m) {
    const std::uint64_t upto = ctx.table().index_of(cert.q[static_cast<std::size_t>(m - 1)]);
    if (upto >= j) {
      runs.push_back({static_cast<std::uint32_t>(m), upto - j + 1});
      j = upto + 1;
    }
  }
  return FactoredInteger::normalize(std::move(runs));
}

DDReal direct_U(const ExtremalCertificate& cert, const LemmaContext& ctx) {
  Accumulator U;
  for (const auto& [j, a] : cert.N_star.factors()) U.add(u_term(ctx.prime(j), a + 1));
  return U.value();
}

// ---- exact verification ----

bool BigintReport::passed(double tol) const {
  return log_G_diff <= tol && sigma_ratio_diff <= tol && exponents_match && product_form_match &&
         multiplicativity;
}

BigintReport bigint_verify(std::uint64_t k, const LemmaContext& ctx) {
  const ExtremalCertificate cert = construct(k, ctx);
  constexpr double kMaxDigits = 1e4;
  const double digits = cert.eta.to_double() / std::log(10.0) + 1.0;
  if (digits > kMaxDigits) {
    throw ResourceError("N_k* has about " + std::to_string(static_cast<long long>(digits)) +
                        " digits; exact verification is limited to 10^4");
  }
  BigintReport rep;
  rep.k = k;

  const auto factors = cert.N_star.factors();
  BigInt N = 1, sigma = 1;
  for (const auto& [j, a] : factors) {
    const BigInt p = static_cast<unsigned long>(ctx.prime(j));
    BigInt pa;
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), a);
    N *= pa;
    sigma *= (pa * p - 1) / (p - 1);
  }
  rep.digits = mpz_sizeinbase(N.get_mpz_t(), 10);

  // Factor N back over p_1..p_k.
  {
    BigInt rest = N;
    std::vector<std::uint32_t> found;
    for (std::uint64_t j = 1; j <= k; ++j) {
      const BigInt p = static_cast<unsigned long>(ctx.prime(j));
      std::uint32_t e = 0;
      while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) {
        rest /= p;
        ++e;
      }
      found.push_back(e);
    }
    rep.exponents_match = rest == 1 && FactoredInteger::encode(found) == cert.N_star.runs();
  }

  // prod_m T(q_m) * prod_{j < nu} p_j^(alpha_j - r)
  {
    BigInt M = 1;
    for (const std::uint64_t q : cert.q) {
      for (std::uint64_t j = 1; j <= k && ctx.prime(j) <= q; ++j) M *= static_cast<unsigned long>(ctx.prime(j));
    }
    for (std::uint64_t j = 1; j < cert.nu; ++j) {
      BigInt pw;
      const BigInt p = static_cast<unsigned long>(ctx.prime(j));
      mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), cert.N_star.exponent(j) - static_cast<std::uint32_t>(cert.r));
      M *= pw;
    }
    rep.product_form_match = M == N;
  }

  // sigma(2^a 3^b) by divisor enumeration against the product of the parts.
  {
    const std::uint32_t a = cert.N_star.exponent(1);
    const std::uint32_t b = cert.N_star.exponent(2);
    BigInt by_divisors = 0;
    BigInt two_i = 1;
    for (std::uint32_t i = 0; i <= a; ++i) {
      BigInt three_j = 1;
      for (std::uint32_t jj = 0; jj <= b; ++jj) {
        by_divisors += two_i * three_j;
        three_j *= 3;
      }
      two_i *= 2;
    }
    BigInt s2, s3;
    mpz_ui_pow_ui(s2.get_mpz_t(), 2, a + 1);
    mpz_ui_pow_ui(s3.get_mpz_t(), 3, b + 1);
    rep.multiplicativity = by_divisors == (s2 - 1) * ((s3 - 1) / 2);
  }

  const BigFloat logN = log(BigFloat::from_int(N));
  const BigFloat log_ratio = log(BigFloat::from_int(sigma)) - logN;
  const BigFloat exact = log_ratio - log(log(logN));
  rep.log_G_exact = exact.to_dd();
  rep.log_G_pipeline = cert.log_G;
  rep.log_G_diff = std::abs((exact - BigFloat::from_dd(cert.log_G)).to_double());
  rep.log_sigma_over_N_exact = log_ratio.to_dd();
  rep.S_minus_U = cert.S_k - cert.U_k;
  rep.sigma_ratio_diff = std::abs((log_ratio - BigFloat::from_dd(rep.S_minus_U)).to_double());
  return rep;
}

BigintReport bigint_verify(std::uint64_t k) {
  const std::uint64_t kmin = k_min();
  if (k < kmin) throw UnsupportedRegime("construction needs k >= " + std::to_string(kmin), kmin);
  const LemmaContext ctx(k);
  return bigint_verify(k, ctx);
}

// ---- scan ----

LemmaScanSummary scan_lemma(std::uint64_t from, std::uint64_t to, std::uint64_t stride,
                            const std::function<void(const ExtremalCertificate&)>& visit,
                            const LemmaContext& ctx, unsigned threads) {
  const std::uint64_t kmin = k_min();
  if (from < kmin) throw UnsupportedRegime("scan needs k >= " + std::to_string(kmin), kmin);
  if (to < from) throw DomainError("scan range is empty");
  if (stride == 0) throw DomainError("stride must be positive");
  if (to > ctx.max_k()) throw DomainError("scan range exceeds the prepared context");
  threads = std::max(1u, threads);

  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = from; k <= to; k += stride) {
    ks.push_back(k);
    if (to - k < stride) break;
  }
  const double p_last = static_cast<double>(ctx.prime(ks.back()));
  const double decade_floor = p_last / 10.0;

  LemmaScanSummary sum;
  double decade_gap = 0.0, decade_C = 0.0;
  bool first = true;

  const std::size_t batch = static_cast<std::size_t>(threads) * 256;
  std::vector<std::optional<ExtremalCertificate>> certs;
  std::vector<std::string> errors;
  for (std::size_t base = 0; base < ks.size(); base += batch) {
    const std::size_t n = std::min(batch, ks.size() - base);
    certs.assign(n, std::nullopt);
    errors.assign(n, std::string());
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < n; i += threads) {
        try {
          certs[i] = construct(ks[base + i], ctx);
        } catch (const Error& e) {
          errors[i] = e.what();
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t k = ks[base + i];
      if (!certs[i]) {
        ++sum.failed;
        if (sum.first_failure.empty()) sum.first_failure = "k=" + std::to_string(k) + ": " + errors[i];
        continue;
      }
      const ExtremalCertificate& c = *certs[i];
      ++sum.certificates;
      if (!c.checks.all()) {
        ++sum.failed;
        if (sum.first_failure.empty()) sum.first_failure = "k=" + std::to_string(k) + ": " + c.checks.failures();
      }
      const double sg = c.scaled_gap.to_double();
      if (first) {
        sum.scaled_gap_min = sum.scaled_gap_max = sg;
        first = false;
      }
      sum.scaled_gap_min = std::min(sum.scaled_gap_min, sg);
      sum.scaled_gap_max = std::max(sum.scaled_gap_max, sg);
      const double p = static_cast<double>(c.p_k);
      if (p > decade_floor) {
        decade_gap += sg;
        decade_C += c.C_k.to_double();
        ++sum.last_decade_count;
      }
      const double lp = std::log(p);
      sum.last_eta_ratio = (c.eta - c.theta_pk).to_double() / std::sqrt(2.0 * p);
      sum.last_U1_ratio = c.U_bands[0].to_double() * std::sqrt(p) * lp / std::sqrt(2.0);
      double upper = 0.0;
      for (std::size_t m = 1; m < c.U_bands.size(); ++m) upper += c.U_bands[m].to_double();
      sum.fitted_C2 = std::max(sum.fitted_C2, upper / (std::pow(p, -2.0 / 3.0) * std::sqrt(lp)));
      if (visit) visit(c);
    }
  }
  if (sum.last_decade_count > 0) {
    sum.last_decade_mean_scaled_gap = decade_gap / static_cast<double>(sum.last_decade_count);
    sum.last_decade_mean_C_k = decade_C / static_cast<double>(sum.last_decade_count);
  }
  return sum;
}

}  // namespace glab::extremal
