#pragma once

#include <functional>

#include "glab/ddreal.hpp"

namespace glab {

struct QuadratureResult {
  DDReal value;
  double error_estimate = 0.0;  ///< sum of accepted |coarse - fine| differences
  int intervals = 0;
};

/// Adaptive 16-point Gauss–Legendre in pair arithmetic. An interval is
/// accepted when the one-panel and two-panel rules agree to its share of
/// `abs_tol`. Throws NumericContractError past the recursion limit.
QuadratureResult integrate(const std::function<DDReal(const DDReal&)>& f, const DDReal& a,
                           const DDReal& b, double abs_tol);

}  // namespace glab
