#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ablev/types.hpp"

namespace ablev {

/// Boundary-condition pair (C,D): CD* self-adjoint and CC*+DD* invertible.
/// (C,D) and (VC,VD) with V invertible label the same operator.
struct AdmissiblePair {
  Matrix2c C;
  Matrix2c D;
};

/// One-to-one unitary label of the same family: C(U) = (1-U)/2, D(U) = i(1+U)/2.
struct ExtensionPoint {
  Matrix2c U;
};

struct AdmissibilityReport {
  bool admissible = false;
  double hermiticity_residual = 0.0;  // ||CD* - (CD*)*||
  double rank_residual = 0.0;         // |det(CC* + DD*)|
};

/// Checks both admissibility conditions at tolerance 1e-10 (relative).
AdmissibilityReport is_admissible(const Matrix2c& C, const Matrix2c& D);

/// Canonical pair for a unitary U. Throws std::invalid_argument off U(2).
AdmissiblePair from_unitary(const ExtensionPoint& u);

/// Gauge-invariant inverse of from_unitary: U = -(C - iD)^{-1} (C + iD).
/// Round-trips from_unitary exactly and maps (VC,VD) to the same U.
ExtensionPoint to_unitary(const AdmissiblePair& pair);

/// Number of eigenvalues of the self-adjoint matrix CD* below -tau,
/// tau = 1e-10 (1 + ||CD*||). Equals the number of bound states.
int negative_count_cdstar(const AdmissiblePair& pair);

/// Deterministic admissible pair: seeded complex Gaussian, orthonormalized
/// into U(2), then from_unitary.
AdmissiblePair random_pair(std::uint64_t seed);

/// Seeded Haar-ish unitary used by random_pair; exposed for sweeps.
ExtensionPoint random_unitary(std::uint64_t seed);

/// Case label with predicted per-edge phases from the case tables.
struct Classification {
  std::string label;   // "I", "II.1".."II.12" (a/b where split), "III", "IV.1".."IV.15"
  double phi1 = 0.0;   // predicted threshold-edge phase
  double phi2 = 0.0;   // predicted scattering-edge phase
  double phi3 = 0.0;   // predicted high-energy-edge phase
  int bound_states = 0;

  // Auxiliary data, populated when the defining conditions hold.
  std::optional<Matrix2c> E;        // D^{-1}C, hermitized (det D != 0)
  std::optional<double> ell;        // scalar coupling (dim ker D = 1)
  std::optional<Vector2c> ker_D;    // unit kernel vector of D, phase-fixed
  std::optional<Vector2c> ker_C;    // unit kernel vector of C, phase-fixed

  double predicted_sum() const { return phi1 + phi2 + phi3; }
};

/// Classifies an admissible pair into exactly one table row and returns the
/// predicted (phi1, phi2, phi3) and bound-state count. Throws DegenerateCase
/// when a discriminating quantity lies within tolerance of a case boundary.
Classification classify(const AdmissiblePair& pair, Flux alpha);

/// Scalar coupling and kernel direction in the dim ker D = 1 regime.
/// ell = -pi/(2 sin(pi alpha)) tan(theta/2) with e^{i theta} the non-(-1)
/// eigenvalue of the associated U; sign(ell) = sign of the nonzero CD* eigenvalue.
std::pair<double, Vector2c> ell_and_kernel(const AdmissiblePair& pair, Flux alpha);

/// Unit vector spanning the numerical kernel of a rank-1 2x2 matrix, with the
/// first nonzero component made real positive. Throws KernelDimension if the
/// numerical kernel is not one-dimensional.
Vector2c kernel_direction(const Matrix2c& m);

}  // namespace ablev
