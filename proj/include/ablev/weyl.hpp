#pragma once

#include <vector>

#include "ablev/extensions.hpp"
#include "ablev/types.hpp"

namespace ablev {

/// Weyl matrix M(z) for z < 0:
///   M(z) = -(2/pi) sin(pi a) diag( Gamma(1-a)^2 (-z/4)^a , Gamma(a)^2 (-z/4)^{1-a} ).
/// Both entries are strictly negative and increase monotonically to 0 as z -> 0-.
Matrix2d weyl_m(Flux alpha, double z);

/// A located negative eigenvalue of the extension.
struct SpectralPoint {
  double z = 0.0;        // energy, z < 0
  int multiplicity = 1;  // dimension of the numerical kernel of D M(z) - C
  double residual = 0.0; // smallest singular value of D M(z) - C at z
  bool clustered = false;  // set when distinct roots merged within 1e-6 relative
};

/// All z < 0 with D M(z) - C singular, found by a minimum scan of the smallest
/// singular value over a log grid in (-z) plus bracketed refinement. The total
/// multiplicity always equals negative_count_cdstar; CountMismatch otherwise.
std::vector<SpectralPoint> bound_states(const AdmissiblePair& pair, Flux alpha);

}  // namespace ablev
