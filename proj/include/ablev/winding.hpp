#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ablev/extensions.hpp"
#include "ablev/scattering.hpp"
#include "ablev/types.hpp"

namespace ablev {

/// How an edge's native parameter is transformed for midpoint refinement.
enum class EdgeScale {
  Sinh,  // x-type edges: refine uniformly in asinh(x), endpoints at +/-inf
  Log,   // kappa-type edges: refine uniformly in ln(kappa), endpoints 0 and inf
};

/// Sampled edge with its accumulated determinant track.
struct EdgeSamples {
  int edge_id = 0;
  std::vector<double> params;    // native coordinates; first/last may be +/-inf (or 0)
  std::vector<Matrix2c> values;  // matrix samples
  std::vector<Complex> dets;
  double variation = 0.0;        // unwrapped det-phase change along the traversal
};

/// Total argument change of det along one edge, traversed from lo to hi in the
/// native coordinate. Adaptive bisection in the transformed coordinate until
/// every raw phase step is < pi/2; endpoint-adjacent gaps are closed by pushing
/// samples outward geometrically. Throws NonConvergence past 2^20 samples.
/// `window` overrides the initial interior range in the transformed coordinate
/// (asinh x or ln kappa); callers widen it when the interesting region of the
/// pair sits outside the defaults.
double edge_variation(const std::function<Matrix2c(double)>& value_at, double lo, double hi,
                      EdgeScale scale, EdgeSamples* out = nullptr, int initial_points = 0,
                      std::pair<double, double> window = {0.0, 0.0});

/// The oriented traversal of the compactified square's boundary with the four
/// sampled edges: (B1, x: -inf->inf), (B2, kappa: 0->inf), (B3, x: inf->-inf),
/// (B4, kappa: inf->0).
struct BoundaryLoop {
  std::array<EdgeSamples, 4> edges;
  double max_corner_residual = 0.0;
};

struct LevinsonReport {
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0, phi4 = 0.0;
  int wind = 0;
  int bound_count = 0;
  Classification case_label;       // label "degenerate" when classify refuses
  bool degenerate = false;
  double max_corner_residual = 0.0;
  double integer_residual = 0.0;   // distance of (sum phi)/2pi to the nearest integer
  double sum() const { return phi1 + phi2 + phi3 + phi4; }
};

/// Winding of det Gamma around the square: sums the four signed edge
/// variations (the B3 and B4 legs run backwards). wind = -#bound states.
/// Throws IntegerDrift if the total is not an integer multiple of 2 pi
/// within 1e-6. Pass a BoundaryLoop to keep the sampled edges.
LevinsonReport total_winding(const AdmissiblePair& pair, Flux alpha,
                             BoundaryLoop* loop = nullptr);

/// true iff wind == -bound_count and, when the classifier is conclusive, every
/// numerical phi_j matches its table prediction to 1e-6 (1+|prediction|).
std::pair<bool, LevinsonReport> levinson_check(const AdmissiblePair& pair, Flux alpha);

/// Var of phi_{a,b}(x) = [G(a+ix)/G(a-ix)] [G(b-ix)/G(b+ix)] by quadrature of
/// the digamma form of (1/i) phi^-1 phi' over [-X, X] plus the analytic tail
/// from the asymptotic expansion. Equals 2 pi (a-b) to ~1e-9 for X >= 60.
double var_phi_ab(double a, double b, double cutoff = 60.0);

/// Var of the unit-modulus scalar phi_m(x, c) = phi_minus + c * phi_tilde,
/// via the same adaptive unwrapping machinery as the matrix edges.
double var_phi_m(int m, Flux alpha, Complex c);

}  // namespace ablev
