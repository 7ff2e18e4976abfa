#pragma once

#include <span>
#include <vector>

#include "ablev/types.hpp"

namespace ablev {

/// Principal-branch log Gamma. Lanczos (g=7, 9 coefficients) for Re z >= 1/2,
/// reflection formula otherwise. Relative accuracy ~1e-13 for |z| <= 1e3.
Complex log_gamma(Complex z);

/// Gamma(z) via exp(log_gamma); overflows for large Re z, fine for |z| < ~170.
Complex gamma(Complex z);

/// Gamma(a+ix)/Gamma(a-ix) for a > 0, computed as exp(2i Im log_gamma(a+ix)).
/// Unit modulus by construction.
Complex gamma_phase_ratio(double a, double x);

/// Digamma psi(z): upward recurrence to |z| >= 8, then the asymptotic series.
Complex digamma(Complex z);

/// A sequence of nonzero samples together with a continuous determination of
/// their argument. Adjacent unwrapped steps are < pi/2 by construction.
struct PhaseTrack {
  std::vector<Complex> samples;
  std::vector<double> unwrapped_args;
  double variation() const { return unwrapped_args.back() - unwrapped_args.front(); }
};

/// Unwraps the argument along the sample sequence. Throws RefinementNeeded if
/// any raw adjacent step has magnitude >= pi/2 (the caller must subdivide).
PhaseTrack unwrap(std::span<const Complex> samples);

}  // namespace ablev
