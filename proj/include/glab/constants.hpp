#pragma once

#include "glab/ddreal.hpp"

namespace glab {

struct Constants {
  DDReal gamma;      ///< Euler–Mascheroni constant
  DDReal exp_gamma;  ///< e^gamma, the limsup of the Gronwall numbers
  DDReal two_sqrt2;  ///< 2 sqrt 2, the ceiling on the modified Mertens limsup
  DDReal sqrt2;
  DDReal log2;
  DDReal pi;
};

/// Process-wide constants, computed once on first use.
const Constants& constants();

/// Decimal reference value of gamma (40 significant digits).
inline constexpr const char* kGammaDecimal = "0.5772156649015328606065120900824024310422";

}  // namespace glab
