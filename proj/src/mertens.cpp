#include "glab/mertens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/quadrature.hpp"
#include "glab/zeta.hpp"

namespace glab::mertens {

DDReal mertens_term(std::uint64_t p) { return log1p(DDReal(1.0) / DDReal(p - 1)); }

RemainderSample RemainderFold::push(std::uint64_t p) {
  if (p <= last_) throw InvariantViolation("remainder fold requires strictly increasing primes");
  last_ = p;
  ++k_;
  const DDReal log_p = log(DDReal(p));
  theta_.add(log_p);
  S_.add(mertens_term(p));

  const DDReal& gamma = constants().gamma;
  RemainderSample s;
  s.k = k_;
  s.p = p;
  s.theta = theta_.value();
  s.S = S_.value();
  s.loglog_p = log(log_p);
  s.R = s.S - s.loglog_p - gamma;
  if (p >= kMinLimit) {
    s.loglog_theta = log(log(s.theta));
    s.Q = (s.S - s.loglog_theta) - gamma;
    s.scaled_Q = *s.Q * sqrt(DDReal(p)) * log_p;
  }
  return s;
}

ScanSummary scan(std::uint64_t limit, const std::function<void(const RemainderSample&)>& visit,
                 const SieveConfig& config, std::uint64_t window_from) {
  if (limit < kMinLimit) throw DomainError("scan requires limit >= 5 (log log theta undefined below)");
  ScanSummary summary;
  summary.window_from = window_from;
  summary.max_identity_error = 0.0;
  RemainderFold fold;
  for_each_segment(0, limit + 1, config, [&](std::span<const std::uint64_t> ps) {
    for (const std::uint64_t p : ps) {
      const RemainderSample s = fold.push(p);
      ++summary.samples;
      if (s.Q) {
        const DDReal identity = (*s.Q - s.R) - (s.loglog_p - s.loglog_theta);
        summary.max_identity_error = std::max(summary.max_identity_error, abs(identity));
        if (p >= window_from) {
          if (!summary.sup_scaled_Q || *s.scaled_Q > *summary.sup_scaled_Q) {
            summary.sup_scaled_Q = s.scaled_Q;
            summary.sup_p = p;
          }
          if (!summary.inf_scaled_Q || *s.scaled_Q < *summary.inf_scaled_Q) {
            summary.inf_scaled_Q = s.scaled_Q;
            summary.inf_p = p;
          }
        }
      }
      if (visit) visit(s);
    }
  });
  return summary;
}

RemainderPoint remainder_at(double x) {
  if (!(x >= static_cast<double>(kMinLimit))) throw DomainError("remainder_at requires x >= 5");
  RemainderSample last;
  scan(static_cast<std::uint64_t>(std::floor(x)), [&](const RemainderSample& s) { last = s; });
  RemainderPoint pt;
  pt.x = x;
  pt.theta = last.theta;
  pt.S = last.S;
  pt.Q = *last.Q;
  const DDReal xd(x);
  pt.scaled_Q = pt.Q * sqrt(xd) * log(xd);
  return pt;
}

ThetaSummary theta_deviation(std::uint64_t limit, const std::function<void(const ThetaSample&)>& visit,
                             const SieveConfig& config) {
  if (limit < 2) throw DomainError("theta_deviation requires limit >= 2");
  const DDReal eight_pi = constants().pi * 8.0;
  ThetaSummary summary;
  Accumulator theta;
  auto scaled = [&](const DDReal& dev, std::uint64_t x, DDReal& c0, DDReal& rh) {
    const DDReal xd(x);
    const DDReal lx = log(xd);
    c0 = abs(dev) * lx / xd;
    rh = abs(dev) * eight_pi / (sqrt(xd) * lx * lx);
  };
  auto track = [&](const DDReal& c0, const DDReal& rh, double at) {
    if (c0.to_double() > summary.c0_sup) {
      summary.c0_sup = c0.to_double();
      summary.c0_sup_at = at;
    }
    if (rh.to_double() > summary.rh_sup) {
      summary.rh_sup = rh.to_double();
      summary.rh_sup_at = at;
    }
  };
  for_each_segment(0, limit + 1, config, [&](std::span<const std::uint64_t> ps) {
    for (const std::uint64_t p : ps) {
      DDReal c0, rh;
      // Left limit x -> p^-, where theta still excludes p.
      scaled(theta.value() - DDReal(p), p, c0, rh);
      track(c0, rh, std::nextafter(static_cast<double>(p), 0.0));

      theta.add(log(DDReal(p)));
      ThetaSample s;
      s.x = p;
      s.deviation = theta.value() - DDReal(p);
      scaled(s.deviation, p, s.c0_scaled, s.rh_scaled);
      track(s.c0_scaled, s.rh_scaled, static_cast<double>(p));
      ++summary.samples;
      if (visit) visit(s);
    }
  });
  return summary;
}

DDReal tail_estimate(double x, double lambda) {
  const DDReal lm1 = DDReal(lambda) - 1.0;
  const DDReal lx = log(DDReal(x));
  return DDReal(1.0) / (lm1 * exp(lm1 * lx) * lx);
}

namespace {
constexpr double kDirectTailBelow = 1e-25;
constexpr std::uint64_t kDirectTailWidth = std::uint64_t{1} << 22;
}  // namespace

TailEstimate prime_zeta_tail(double x, double lambda) {
  if (!(lambda > 1.0)) throw DomainError("prime_zeta_tail requires lambda > 1");
  if (!(x >= 2.0)) throw DomainError("prime_zeta_tail requires x >= 2");
  TailEstimate t;
  t.x = x;
  t.lambda = lambda;
  t.estimate = tail_estimate(x, lambda);
  if (t.estimate.to_double() > kDirectTailBelow) {
    t.Y = prime_zeta_tail_sum(x, lambda);
  } else {
    // The Möbius series carries ~1e-31 absolute error, useless here. Sum the
    // primes of (x, x + W] and close with J at the far end; the tail then is
    // a fraction (1 + W/x)^(1-lambda) of Y.
    const auto lo = static_cast<std::uint64_t>(std::floor(x)) + 1;
    const std::uint64_t hi = lo + kDirectTailWidth;
    Accumulator acc;
    for (const std::uint64_t p : primes_between(lo, hi)) acc.add(inverse_power(p, DDReal(lambda)));
    acc.add(log_integral_J(static_cast<double>(hi - 1), lambda));
    t.Y = acc.value();
  }
  t.delta = t.Y / t.estimate - 1.0;
  t.X_lambda = std::exp(std::max(1.0, 2.0 / (lambda - 1.0)));
  t.above_threshold = x > t.X_lambda;
  return t;
}

DDReal log_integral_J(double x, double lambda) {
  if (!(lambda > 1.0)) throw DomainError("log_integral_J requires lambda > 1");
  if (!(x > 1.0)) throw DomainError("log_integral_J requires x > 1");
  const DDReal a = (DDReal(lambda) - 1.0) * log(DDReal(x));
  const double ad = a.to_double();
  if (ad > 740.0) return 0.0;  // below e^-740 / 740
  constexpr double kCutoff = 80.0;
  const DDReal upper = log1p(DDReal(kCutoff) / a);
  const double scale = std::exp(-ad) / (ad + 1.0);
  const auto result = integrate([&](const DDReal& w) { return exp(-(a * exp(w))); }, 0.0, upper,
                                1e-30 * scale);
  return result.value;
}

DDReal b1_head(std::uint64_t head_limit) {
  Accumulator acc;
  acc.add(constants().gamma);
  if (head_limit >= 2) {
    for_each_segment(0, head_limit + 1, {}, [&](std::span<const std::uint64_t> ps) {
      for (const std::uint64_t p : ps) {
        const DDReal inv = DDReal(1.0) / DDReal(p);
        acc.add(log1p(-inv));
        acc.add(inv);
      }
    });
  }
  return acc.value();
}

B1Result meissel_mertens_B1(double tolerance, std::uint64_t head_limit) {
  if (!(tolerance > 0.0)) throw DomainError("B1 tolerance must be positive");
  if (tolerance < 1e-30) throw ResourceError("B1 tolerance below 1e-30 is beyond pair precision");
  if (head_limit < 10) throw DomainError("B1 head limit must be at least 10");
  B1Result r;
  r.head_limit = head_limit;
  r.head = b1_head(head_limit);
  const double X = static_cast<double>(head_limit);
  const double target = std::min(tolerance * 1e-3, 1e-34);
  Accumulator tail;
  for (int m = 2;; ++m) {
    tail.add(-(prime_zeta_tail_sum(X, m) / static_cast<double>(m)));
    ++r.tail_terms;
    // Remaining sum_{m' > m} Y(X, m') / m' <= sum X^(1-m') / (m' - 1) / m'.
    const double next = std::pow(X, -m) / (m * (m + 1.0));
    r.truncation_bound = next / (1.0 - 1.0 / X);
    if (r.truncation_bound < target) break;
  }
  r.tail = tail.value();
  r.value = r.head + r.tail;
  return r;
}

CriterionSummary criterion_scan(std::uint64_t limit, const std::function<void(const CriterionRow&)>& visit,
                                const SieveConfig& config, std::uint64_t window_from) {
  if (limit < kMinLimit) throw DomainError("criterion_scan requires limit >= 5");
  CriterionSummary summary;
  summary.B1 = meissel_mertens_B1(1e-25).value;
  summary.max_scaled_residual = 0.0;
  const DDReal gamma = constants().gamma;
  const DDReal b1_minus_gamma = summary.B1 - gamma;
  Accumulator recip, theta, S;
  std::uint64_t k = 0;
  for_each_segment(0, limit + 1, config, [&](std::span<const std::uint64_t> ps) {
    for (const std::uint64_t p : ps) {
      ++k;
      const DDReal pd(p);
      const DDReal log_p = log(pd);
      recip.add(DDReal(1.0) / pd);
      theta.add(log_p);
      S.add(mertens_term(p));
      CriterionRow row;
      row.k = k;
      row.p = p;
      row.recip_sum = recip.value();
      if (p >= kMinLimit) {
        row.loglog_theta = log(log(theta.value()));
        row.B1_gap = (row.recip_sum - *row.loglog_theta) - summary.B1;
        row.scaled_gap = *row.B1_gap * sqrt(pd) * log_p;
        if (p >= window_from && (!summary.sup_scaled_gap || *row.scaled_gap > *summary.sup_scaled_gap)) {
          summary.sup_scaled_gap = row.scaled_gap;
          summary.sup_p = p;
        }
      }
      row.identity_residual = (row.recip_sum - S.value()) - b1_minus_gamma;
      row.scaled_residual = row.identity_residual * pd;
      summary.max_scaled_residual = std::max(summary.max_scaled_residual, abs(row.scaled_residual));
      ++summary.rows;
      if (visit) visit(row);
    }
  });
  return summary;
}

}  // namespace glab::mertens
