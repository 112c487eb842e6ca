#include "glab/quadrature.hpp"

#include <array>
#include <cmath>

#include "glab/errors.hpp"

namespace glab {

namespace {

constexpr int kOrder = 16;
constexpr int kMaxDepth = 48;

struct Rule {
  std::array<DDReal, kOrder> nodes;    // on [-1, 1]
  std::array<DDReal, kOrder> weights;
};

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre(const DDReal& x, DDReal& p, DDReal& dp) {
  DDReal p0 = 1.0;
  DDReal p1 = x;
  for (int k = 2; k <= kOrder; ++k) {
    const DDReal p2 = (x * p1 * static_cast<double>(2 * k - 1) - p0 * static_cast<double>(k - 1)) /
                      static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = (x * p1 - p0) * static_cast<double>(kOrder) / (x * x - 1.0);
}

const Rule& gauss_legendre() {
  static const Rule rule = [] {
    Rule r;
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < kOrder; ++i) {
      DDReal x = std::cos(pi * (i + 0.75) / (kOrder + 0.5));
      DDReal p, dp;
      for (int it = 0; it < 8; ++it) {
        legendre(x, p, dp);
        x = x - p / dp;
      }
      legendre(x, p, dp);
      r.nodes[static_cast<std::size_t>(i)] = x;
      r.weights[static_cast<std::size_t>(i)] = DDReal(2.0) / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

DDReal panel(const std::function<DDReal(const DDReal&)>& f, const DDReal& a, const DDReal& b) {
  const Rule& rule = gauss_legendre();
  const DDReal half = (b - a) * 0.5;
  const DDReal mid = (b + a) * 0.5;
  DDReal sum = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    const auto k = static_cast<std::size_t>(i);
    sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return sum * half;
}

void adapt(const std::function<DDReal(const DDReal&)>& f, const DDReal& a, const DDReal& b,
           const DDReal& whole, double tol, int depth, QuadratureResult& out) {
  const DDReal mid = (a + b) * 0.5;
  const DDReal left = panel(f, a, mid);
  const DDReal right = panel(f, mid, b);
  const DDReal refined = left + right;
  const double diff = std::abs((refined - whole).to_double());
  // Below ~100 pair ulps of the panel the difference is rounding noise.
  if (diff <= tol || diff <= 1e-30 * std::abs(refined.to_double())) {
    out.value += refined;
    out.error_estimate += diff;
    out.intervals += 2;
    return;
  }
  if (depth >= kMaxDepth) throw NumericContractError("adaptive quadrature did not converge");
  adapt(f, a, mid, left, tol * 0.5, depth + 1, out);
  adapt(f, mid, b, right, tol * 0.5, depth + 1, out);
}

}  // namespace

QuadratureResult integrate(const std::function<DDReal(const DDReal&)>& f, const DDReal& a,
                           const DDReal& b, double abs_tol) {
  QuadratureResult out;
  out.value = 0.0;
  if (a == b) return out;
  adapt(f, a, b, panel(f, a, b), abs_tol, 0, out);
  return out;
}

}  // namespace glab
