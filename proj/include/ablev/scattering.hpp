#pragma once

#include "ablev/extensions.hpp"
#include "ablev/types.hpp"

namespace ablev {

/// Channel phase shift: delta_m = (pi/2)(|m| - |m+alpha|).
double channel_delta(int m, Flux alpha);

/// Channel symbol of the free part of the wave operator:
///   phi_minus(m,a,x) = e^{i delta} G((|m|+1+ix)/2)/G((|m|+1-ix)/2)
///                               * G((|m+a|+1-ix)/2)/G((|m+a|+1+ix)/2),
/// unit modulus. x = +/-inf are accepted and give the analytic limits
/// 1 (at -inf) and e^{2i delta} (at +inf).
Complex phi_minus(int m, Flux alpha, double x);

/// Channel symbol multiplying the scattering part, m in {0,-1} only.
/// The e^{pi x/2} growth is cancelled analytically against the Gamma pair
/// via the reflection formula, so large |x| is safe. Limits: 0 at -inf, 1 at +inf.
Complex phi_tilde(int m, Flux alpha, double x);

/// Momentum-side diagonal factors b1 = G(1-a) kappa^a / 2^a,
/// b2 = G(a) kappa^{1-a} / 2^{1-a}.
std::pair<double, double> b_factors(Flux alpha, double kappa);

/// diag(e^{-i pi a/2}, e^{-i pi (1-a)/2}).
Matrix2c phase_matrix(Flux alpha);

/// S~(kappa): the three-factor product with the kappa^a / kappa^{1-a} powers,
/// the e^{-i pi a/2}-type phases, and the sign flip on the second entry of the
/// last factor. Requires finite kappa > 0.
Matrix2c s_tilde(const AdmissiblePair& pair, Flux alpha, double kappa);

enum class End { Zero, Infinity };

/// Closed-form limit of the scattering matrix at kappa = 0 or infinity,
/// covering all clauses: the kappa->inf value is decided by D (D=0, det D != 0,
/// dim ker D = 1 split by alpha and the kernel axis), the kappa->0 value by C
/// in the mirrored way, with the projection forms (2P-1) diag(i,-i) and
/// (1-2Pi) diag(i,-i) at alpha = 1/2.
Matrix2c s_asymptotic(const AdmissiblePair& pair, Flux alpha, End end);

/// S(kappa) = diag(e^{-i pi a}, e^{i pi a}) + S~(kappa) for finite kappa > 0;
/// kappa = 0 and kappa = inf return the s_asymptotic values. Unitary.
Matrix2c s_matrix(const AdmissiblePair& pair, Flux alpha, double kappa);

/// Cayley-form route for det D != 0 (independent of the three-factor product):
///   S = Phi (X + i sin pi a)(X - i sin pi a)^{-1} Phi J,
///   X = B^{-1} L B^{-1} + cos(pi a) J,  L = pi/(2 sin pi a) D^{-1}C.
Matrix2c s_matrix_cayley(const AdmissiblePair& pair, Flux alpha, double kappa);

/// The four edge restrictions of the wave-operator symbol on the boundary of
/// the compactified square [0,inf] x [-inf,inf]. Values are unitary and match
/// at the corners.
struct EdgeFunctionSet {
  AdmissiblePair pair;
  double alpha;
  Matrix2c s0;        // S(0)
  Matrix2c sinf;      // S(inf)
  Matrix2c st0;       // S~(0)  = S(0)   - diag(e^{-i pi a}, e^{i pi a})
  Matrix2c stinf;     // S~(inf) = S(inf) - diag(e^{-i pi a}, e^{i pi a})

  Matrix2c gamma1(double x) const;      // threshold edge, x in [-inf, inf]
  Matrix2c gamma2(double kappa) const;  // scattering edge, kappa in [0, inf]
  Matrix2c gamma3(double x) const;      // high-energy edge
  Matrix2c gamma4(double /*kappa*/) const { return Matrix2c::Identity(); }
};

EdgeFunctionSet gamma_edges(const AdmissiblePair& pair, Flux alpha);

}  // namespace ablev
