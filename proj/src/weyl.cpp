#include "ablev/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ablev/special.hpp"

namespace ablev {

namespace {

double sigma_min_at(const AdmissiblePair& pair, Flux alpha, double z) {
  const Matrix2c m = pair.D * weyl_m(alpha, z).cast<Complex>() - pair.C;
  return smallest_singular_value(m);
}

// Golden-section minimization of sigma_min over [lo, hi] in w = log(-z),
// down to a bracket of width tol_w.
double refine_minimum(const AdmissiblePair& pair, Flux alpha, double w_lo, double w_hi,
                      double tol_w) {
  constexpr double invphi = 0.6180339887498949;
  double a = w_lo, b = w_hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = sigma_min_at(pair, alpha, -std::exp(x1));
  double f2 = sigma_min_at(pair, alpha, -std::exp(x2));
  while (b - a > tol_w) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = sigma_min_at(pair, alpha, -std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = sigma_min_at(pair, alpha, -std::exp(x2));
    }
  }
  return 0.5 * (a + b);
}

std::vector<SpectralPoint> scan(const AdmissiblePair& pair, Flux alpha, double w_min,
                                double w_max, int per_decade, int expected) {
  const int n = int((w_max - w_min) / std::log(10.0) * per_decade) + 1;
  std::vector<double> sv(n);
  const double dw = (w_max - w_min) / (n - 1);
  for (int i = 0; i < n; ++i) sv[i] = sigma_min_at(pair, alpha, -std::exp(w_min + i * dw));

  const double matrix_scale = pair.C.norm() + pair.D.norm();

  // Candidate minima, best first.
  std::vector<int> idx;
  for (int i = 1; i + 1 < n; ++i)
    if (sv[i] <= sv[i - 1] && sv[i] <= sv[i + 1]) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return sv[i] < sv[j]; });

  std::vector<SpectralPoint> points;
  int total = 0;
  for (int i : idx) {
    if (total >= expected) break;
    const double w = refine_minimum(pair, alpha, w_min + (i - 1) * dw, w_min + (i + 1) * dw,
                                    1e-13);
    const double z = -std::exp(w);
    const Matrix2c m = pair.D * weyl_m(alpha, z).cast<Complex>() - pair.C;
    const auto [smax, smin] = singular_values(m);
    const double scale = smax + matrix_scale * (1.0 + weyl_m(alpha, z).norm());
    if (smin > 1e-8 * scale) continue;  // shallow dip, not a root
    SpectralPoint pt;
    pt.z = z;
    pt.residual = smin;
    pt.multiplicity = (smax <= 1e-8 * scale) ? 2 : 1;
    // Merge clusters within relative distance 1e-6.
    bool merged = false;
    for (auto& q : points)
      if (std::abs(q.z - z) <= 1e-6 * std::max(std::abs(q.z), std::abs(z))) {
        q.multiplicity += pt.multiplicity;
        q.clustered = true;
        merged = true;
        break;
      }
    if (!merged) points.push_back(pt);
    total += pt.multiplicity;
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.z < b.z; });
  return points;
}

}  // namespace

Matrix2d weyl_m(Flux alpha, double z) {
  if (!(z < 0.0)) throw std::domain_error("weyl_m requires z < 0");
  const double a = alpha.value;
  const double pref = -(2.0 / pi) * std::sin(pi * a);
  const double g1 = std::exp(2.0 * log_gamma(Complex(1.0 - a, 0.0)).real());
  const double g2 = std::exp(2.0 * log_gamma(Complex(a, 0.0)).real());
  Matrix2d m = Matrix2d::Zero();
  m(0, 0) = pref * g1 * std::pow(-z / 4.0, a);
  m(1, 1) = pref * g2 * std::pow(-z / 4.0, 1.0 - a);
  return m;
}

std::vector<SpectralPoint> bound_states(const AdmissiblePair& pair, Flux alpha) {
  if (!is_admissible(pair.C, pair.D).admissible)
    throw std::invalid_argument("bound_states: pair is not admissible");
  const int expected = negative_count_cdstar(pair);
  if (expected == 0) return {};

  // Size the scan window from the magnitudes the diagonal of M must reach at
  // a crossing. Roots scale like target^{1/alpha}, so a fixed window cannot
  // hold them for small alpha or large couplings.
  const double a = alpha.value;
  const double s = std::sin(pi * a);
  std::vector<double> targets;
  const auto [sd_max, sd_min] = singular_values(pair.D);
  if (sd_min > 1e-9 * sd_max) {
    Matrix2c e = pair.D.inverse() * pair.C;
    e = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(e);
    for (int k = 0; k < 2; ++k)
      if (es.eigenvalues()(k) < 0.0) targets.push_back(-es.eigenvalues()(k));
  } else {
    const auto [ell, p] = ell_and_kernel(pair, alpha);
    (void)p;
    targets.push_back(std::abs(ell) * 2.0 * s / pi);
  }

  const double lg10 = std::log(10.0);
  double w_lo = -12.0 * lg10, w_hi = 12.0 * lg10;
  const double c1 = (2.0 / pi) * s * std::exp(2.0 * log_gamma(Complex(1.0 - a, 0.0)).real());
  const double c2 = (2.0 / pi) * s * std::exp(2.0 * log_gamma(Complex(a, 0.0)).real());
  for (double tau : targets) {
    if (!(tau > 1e-300)) continue;
    for (double w : {std::log(4.0) + (std::log(tau) - std::log(c1)) / a,
                     std::log(4.0) + (std::log(tau) - std::log(c2)) / (1.0 - a)}) {
      w_lo = std::min(w_lo, w - 4.0 * lg10);
      w_hi = std::max(w_hi, w + 4.0 * lg10);
    }
  }
  w_lo = std::max(w_lo, -690.0);
  w_hi = std::min(w_hi, 690.0);

  auto pts = scan(pair, alpha, w_lo, w_hi, 200, expected);
  int total = 0;
  for (const auto& p : pts) total += p.multiplicity;
  if (total != expected) {
    // Grid escape: widen and densify once before failing.
    pts = scan(pair, alpha, std::max(w_lo - 4.0 * lg10, -700.0),
               std::min(w_hi + 4.0 * lg10, 700.0), 800, expected);
    total = 0;
    for (const auto& p : pts) total += p.multiplicity;
  }
  if (total != expected)
    throw CountMismatch("bound_states: multiplicity sum " + std::to_string(total) +
                        " != CD* negative count " + std::to_string(expected));
  return pts;
}

}  // namespace ablev
