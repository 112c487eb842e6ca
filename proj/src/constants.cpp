#include "glab/constants.hpp"

namespace glab {

namespace {

Constants make_constants() {
  Constants c;
  c.gamma = parse_ddreal(kGammaDecimal);
  c.exp_gamma = exp(c.gamma);
  c.sqrt2 = sqrt(DDReal(2.0));
  c.two_sqrt2 = sqrt(DDReal(8.0));
  c.log2 = log(DDReal(2.0));
  c.pi = parse_ddreal("3.141592653589793238462643383279502884197");
  return c;
}

}  // namespace

const Constants& constants() {
  static const Constants c = make_constants();
  return c;
}

}  // namespace glab
