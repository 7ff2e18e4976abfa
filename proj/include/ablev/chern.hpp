#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ablev/extensions.hpp"
#include "ablev/types.hpp"

namespace ablev {

/// The 2-manifold X in U(2): conjugation orbit of diag(l1, l2) for fixed
/// unit-modulus l1, l2 with Im l1 < 0 < Im l2, at fixed flux.
struct ManifoldSpec {
  Complex l1, l2;
  double alpha;
  double r1, r2;  // tan(arg(l)/2); r1 < 0 < r2

  ManifoldSpec(Complex lambda1, Complex lambda2, Flux a);
};

/// Chart coordinates: rho in [0,1], phi in [0, 2pi). The circles degenerate to
/// points at rho = 0 and rho = 1.
struct ManifoldPoint {
  double rho;
  double phi;
};

/// The displayed orbit parametrization; unitary with eigenvalues {l1, l2}.
ExtensionPoint manifold_unitary(const ManifoldSpec& spec, const ManifoldPoint& pt);

/// The unique z < 0 with (M11(z)+a)(M22(z)+b) = (r1-r2)^2 rho^2 (1-rho^2),
/// a = rho^2 r1 + (1-rho^2) r2, b = (1-rho^2) r1 + rho^2 r2. Bisection on
/// log(-z) to relative 1e-12. (z does not depend on phi.)
double solve_z(const ManifoldSpec& spec, const ManifoldPoint& pt);

/// Hermitian rank-1 matrix whose kernel line is the bound-state direction.
Matrix2c g_matrix(const ManifoldSpec& spec, const ManifoldPoint& pt);

enum class ChernMethod { boundary_integral, lattice_plaquette };

std::string to_string(ChernMethod m);

struct ChernResult {
  double value = 0.0;
  ChernMethod method = ChernMethod::boundary_integral;
  std::string grid;
  double integer_residual = 0.0;
};

/// Bound-state bundle Chern number from the shrinking-circle boundary
/// integral, Richardson-extrapolated in eps^2. Returns ch(E) (= 1).
ChernResult chern_boundary(const ManifoldSpec& spec,
                           const std::vector<double>& eps_list = {0.2, 0.1, 0.05, 0.025,
                                                                  0.0125});

/// Gauge-invariant plaquette (field-strength) route on an n_rho x n_phi grid:
/// link phases of the kernel-line sections, plaquette fluxes in (-pi, pi],
/// poles closed with the exact chart sections e1 (rho=0) and e2 (rho=1).
/// The total is an exact integer. orientation = -1 reverses the phi traversal
/// and negates the result exactly.
ChernResult chern_lattice(const ManifoldSpec& spec, int n_rho, int n_phi,
                          int orientation = +1);

/// Per-plaquette flux dump for --emit-curvature.
struct PlaquetteFlux {
  double rho, phi, flux;
};
std::vector<PlaquetteFlux> curvature_grid(const ManifoldSpec& spec, int n_rho, int n_phi);

/// Total flux / 2pi of an arbitrary unit-section grid (testing hook; used by
/// chern_lattice internally).
double lattice_total_flux(const std::function<Vector2c(int, int)>& section, int n_rho,
                          int n_phi, std::vector<PlaquetteFlux>* dump = nullptr);

struct Trace3Result {
  double value = 0.0;          // (1/24 pi^2) * the 3-form integral over X x square
  std::array<double, 4> per_edge{};  // slab contributions, same normalization
  double imag_defect = 0.0;    // |imaginary part| of the raw sum (diagnostic)
  std::string grid;
};

/// Degree-3 trace pairing over X x square by central finite differences and
/// the product trapezoid rule. reverse_loop negates the traversal of the
/// square and the result, exactly.
Trace3Result trace3_degree(const ManifoldSpec& spec, int n_rho, int n_phi, int n_t,
                           bool reverse_loop = false);

/// Sup over a 1e3-point log kappa grid (plus endpoints) of the entrywise max
/// difference of the scattering matrices at two manifold points.
double continuity_modulus(const ManifoldSpec& spec, const ManifoldPoint& pt,
                          const ManifoldPoint& pt2);

}  // namespace ablev
