#include "ablev/extensions.hpp"

#include <cmath>
#include <random>

namespace ablev {

namespace {

constexpr Complex iu{0.0, 1.0};

// Two-tier tolerance ladder for sign decisions: values below `exact` count as
// zero (exactly constructed fixtures land here), values between `exact` and
// `boundary` are ambiguous and raise DegenerateCase.
struct SignLadder {
  double exact;
  double boundary;
  // -1, 0, +1; throws on the ambiguous band.
  int operator()(double v, const char* what) const {
    const double a = std::abs(v);
    if (a <= exact) return 0;
    if (a <= boundary)
      throw DegenerateCase(std::string(what) + " within tolerance of a case boundary");
    return v > 0.0 ? 1 : -1;
  }
};

// Self-adjoint 2x2 eigenvalues, ascending.
std::pair<double, double> hermitian_eigenvalues(const Matrix2c& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex w = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(w));
  return {mid - rad, mid + rad};
}

double box_muller(std::mt19937_64& rng) {
  // Hand-rolled so the stream is identical across standard libraries.
  const double u1 = double(rng() >> 11) * 0x1.0p-53;
  const double u2 = double(rng() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * pi * u2);
}

}  // namespace

AdmissibilityReport is_admissible(const Matrix2c& C, const Matrix2c& D) {
  AdmissibilityReport rep;
  const Matrix2c cd = C * D.adjoint();
  rep.hermiticity_residual = (cd - cd.adjoint()).norm();
  rep.rank_residual = std::abs((C * C.adjoint() + D * D.adjoint()).determinant());
  const double herm_tol = 1e-10 * (1.0 + C.norm() * D.norm());
  rep.admissible = rep.hermiticity_residual <= herm_tol && rep.rank_residual > 1e-10;
  return rep;
}

AdmissiblePair from_unitary(const ExtensionPoint& u) {
  if (unitarity_residual(u.U) > 1e-12)
    throw std::invalid_argument("from_unitary: matrix is not unitary");
  return {0.5 * (Matrix2c::Identity() - u.U), 0.5 * iu * (Matrix2c::Identity() + u.U)};
}

ExtensionPoint to_unitary(const AdmissiblePair& pair) {
  const Matrix2c v = pair.C - iu * pair.D;  // the gauge factor; invertible for admissible pairs
  if (std::abs(v.determinant()) < 1e-14 * (1.0 + v.norm() * v.norm()))
    throw std::invalid_argument("to_unitary: pair is not admissible (C - iD singular)");
  Matrix2c u = -v.inverse() * (pair.C + iu * pair.D);
  // Snap to the closest unitary to stop round-off from leaking into
  // downstream eigenvalue and kernel decisions.
  Eigen::JacobiSVD<Matrix2c> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = svd.matrixU() * svd.matrixV().adjoint();
  return {u};
}

int negative_count_cdstar(const AdmissiblePair& pair) {
  const Matrix2c cd = pair.C * pair.D.adjoint();
  const Matrix2c h = 0.5 * (cd + cd.adjoint());
  const auto [lo, hi] = hermitian_eigenvalues(h);
  const double tau = 1e-10 * (1.0 + h.norm());
  return (lo < -tau ? 1 : 0) + (hi < -tau ? 1 : 0);
}

ExtensionPoint random_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix2c g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = Complex(box_muller(rng), box_muller(rng));
  // Gram-Schmidt on the columns; R has positive diagonal, so Q is Haar.
  Vector2c q0 = g.col(0) / g.col(0).norm();
  Vector2c q1 = g.col(1) - q0 * (q0.dot(g.col(1)));
  q1 /= q1.norm();
  Matrix2c u;
  u.col(0) = q0;
  u.col(1) = q1;
  return {u};
}

AdmissiblePair random_pair(std::uint64_t seed) { return from_unitary(random_unitary(seed)); }

Vector2c kernel_direction(const Matrix2c& m) {
  Eigen::JacobiSVD<Matrix2c> svd(m, Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(1);
  if (!(smax > 1e-12) || smin > 1e-9 * smax)
    throw KernelDimension("kernel_direction: numerical kernel is not one-dimensional");
  Vector2c v = svd.matrixV().col(1);
  const int lead = std::abs(v(0)) > 1e-12 ? 0 : 1;
  v *= std::polar(1.0, -std::arg(v(lead)));
  v(lead) = Complex(std::abs(v(lead)), 0.0);  // force exactly real
  return v;
}

std::pair<double, Vector2c> ell_and_kernel(const AdmissiblePair& pair, Flux alpha) {
  const auto [smax, smin] = singular_values(pair.D);
  if (!(smax > 1e-12) || smin > 1e-9 * smax)
    throw KernelDimension("ell_and_kernel requires dim ker D = 1");
  const Matrix2c u = to_unitary(pair).U;
  // Eigenvalues of U from the characteristic polynomial.
  const Complex tr = u.trace();
  const Complex disc = std::sqrt(tr * tr - 4.0 * u.determinant());
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  const Complex other = std::abs(l1 + 1.0) < std::abs(l2 + 1.0) ? l2 : l1;
  if (std::abs(other + 1.0) <= 1e-8)
    throw KernelDimension("ell_and_kernel: both unitary eigenvalues at -1 (D = 0?)");
  const double theta = std::arg(other);
  const double ell = -pi / (2.0 * std::sin(pi * alpha.value)) * std::tan(0.5 * theta);
  return {ell, kernel_direction(pair.D)};
}

Classification classify(const AdmissiblePair& pair, Flux alpha) {
  if (!is_admissible(pair.C, pair.D).admissible)
    throw std::invalid_argument("classify: pair is not admissible");

  const double a = alpha.value;
  const double scale = 1.0 + pair.C.norm() + pair.D.norm();
  Classification out;

  const auto set = [&](std::string label, double p1, double p2, double p3, int nb) {
    out.label = std::move(label);
    out.phi1 = p1;
    out.phi2 = p2;
    out.phi3 = p3;
    out.bound_states = nb;
  };

  if (pair.D.norm() <= 1e-9 * scale) {  // case I: D = 0
    set("I", 0.0, 0.0, 0.0, 0);
    return out;
  }
  if (pair.C.norm() <= 1e-9 * scale) {  // case III: C = 0
    set("III", 2.0 * pi, 0.0, -2.0 * pi, 0);
    return out;
  }

  // alpha = 1/2 is its own family of rows, not a boundary between rows.
  const bool half = std::abs(a - 0.5) <= 1e-9;

  const auto [sd_max, sd_min] = singular_values(pair.D);
  if (sd_min > 1e-9 * sd_max) {
    // Case II: D invertible. Normalize to (E, 1) with E self-adjoint.
    Matrix2c e = pair.D.inverse() * pair.C;
    if ((e - e.adjoint()).norm() > 1e-8 * (1.0 + e.norm()))
      throw std::invalid_argument("classify: D^-1 C is not self-adjoint");
    e = 0.5 * (e + e.adjoint());
    out.E = e;
    const double e11 = e(0, 0).real();
    const double e22 = e(1, 1).real();
    const double tr = e11 + e22;
    const double det = e11 * e22 - std::norm(e(0, 1));
    const double es = 1.0 + e.norm();
    const SignLadder entry{1e-12 * es, 1e-9 * es};
    const SignLadder product{1e-12 * es * es, 1e-9 * es * es};

    const int s_det = product(det, "det(E)");
    if (s_det != 0) {
      const int s11 = entry(e11, "E_11");
      const int s22 = entry(e22, "E_22");
      if (s11 == 0 && s22 == 0) {  // II.5 (det < 0 automatic)
        set("II.5", 0.0, 0.0, -2.0 * pi, 1);
        return out;
      }
      if (s11 * s22 < 0) {  // II.6
        set("II.6", 0.0, 0.0, -2.0 * pi, 1);
        return out;
      }
      const int s_tr = entry(tr, "tr(E)");
      if (s_tr == 0) throw DegenerateCase("tr(E) = 0 with det(E) != 0");
      if (s_tr > 0 && s_det > 0) set("II.1", 0.0, 2.0 * pi, -2.0 * pi, 0);
      if (s_tr > 0 && s_det < 0) set("II.2", 0.0, 0.0, -2.0 * pi, 1);
      if (s_tr < 0 && s_det > 0) set("II.3", 0.0, -2.0 * pi, -2.0 * pi, 2);
      if (s_tr < 0 && s_det < 0) set("II.4", 0.0, 0.0, -2.0 * pi, 1);
      return out;
    }

    // det(E) = 0, E != 0: rows II.7 .. II.12.
    const int s11 = entry(e11, "E_11");
    const int s22 = entry(e22, "E_22");
    const int s_tr = entry(tr, "tr(E)");
    if (s_tr == 0) throw DegenerateCase("tr(E) = 0 with det(E) = 0");
    out.ker_C = kernel_direction(e);
    if (s11 == 0 && s22 == 0) throw DegenerateCase("E = 0 within tolerance");
    if (s11 == 0) {
      if (s_tr > 0) set("II.7.a", 2.0 * pi * a, 2.0 * pi * (1.0 - a), -2.0 * pi, 0);
      else set("II.8.a", 2.0 * pi * a, -2.0 * pi * a, -2.0 * pi, 1);
      return out;
    }
    if (s22 == 0) {
      if (s_tr > 0) set("II.9.a", 2.0 * pi * (1.0 - a), 2.0 * pi * a, -2.0 * pi, 0);
      else set("II.10.a", 2.0 * pi * (1.0 - a), -2.0 * pi * (1.0 - a), -2.0 * pi, 1);
      return out;
    }
    if (half) {
      if (s_tr > 0) set("II.11", pi, pi, -2.0 * pi, 0);
      else set("II.12", pi, -pi, -2.0 * pi, 1);
    } else if (a < 0.5) {
      if (s_tr > 0) set("II.7.b", 2.0 * pi * a, 2.0 * pi * (1.0 - a), -2.0 * pi, 0);
      else set("II.8.b", 2.0 * pi * a, -2.0 * pi * a, -2.0 * pi, 1);
    } else {
      if (s_tr > 0) set("II.9.b", 2.0 * pi * (1.0 - a), 2.0 * pi * a, -2.0 * pi, 0);
      else set("II.10.b", 2.0 * pi * (1.0 - a), -2.0 * pi * (1.0 - a), -2.0 * pi, 1);
    }
    return out;
  }

  // Case IV: dim ker D = 1.
  const auto [ell, p] = ell_and_kernel(pair, alpha);
  out.ell = ell;
  out.ker_D = p;
  const double lscale = 1.0 + pi / (2.0 * std::sin(pi * a));
  const SignLadder lsign{1e-12 * lscale, 1e-9 * lscale};
  const SignLadder psign{1e-12, 1e-9};
  const int s_l = lsign(ell, "ell");
  const int s_p1 = psign(std::abs(p(0)), "p_1");
  const int s_p2 = psign(std::abs(p(1)), "p_2");

  if (s_l == 0) {
    // CD* = 0: U has eigenvalue +1, whose eigenspace is ker C.
    try {
      out.ker_C = kernel_direction(pair.C);
    } catch (const KernelDimension&) {
      // leave unset; predictions below do not need it
    }
  }

  if (half) {
    if (s_l > 0) set("IV.1", 0.0, pi, -pi, 0);
    else if (s_l == 0) set("IV.2", pi, 0.0, -pi, 0);
    else set("IV.3", 0.0, -pi, -pi, 1);
    return out;
  }
  if (a < 0.5) {
    if (s_l < 0) {
      if (s_p1 == 0) set("IV.5", 0.0, -2.0 * pi * (1.0 - a), -2.0 * pi * a, 1);
      else set("IV.4", 0.0, -2.0 * pi * a, -2.0 * pi * (1.0 - a), 1);
    } else if (s_l > 0) {
      if (s_p1 == 0) set("IV.7", 0.0, 2.0 * pi * a, -2.0 * pi * a, 0);
      else set("IV.6", 0.0, 2.0 * pi * (1.0 - a), -2.0 * pi * (1.0 - a), 0);
    } else {
      if (s_p1 != 0 && s_p2 != 0)
        set("IV.8", 2.0 * pi * a, 2.0 * pi * (1.0 - 2.0 * a), -2.0 * pi * (1.0 - a), 0);
      else if (s_p1 == 0) set("IV.9.a", 2.0 * pi * a, 0.0, -2.0 * pi * a, 0);
      else set("IV.9.b", 2.0 * pi * (1.0 - a), 0.0, -2.0 * pi * (1.0 - a), 0);
    }
    return out;
  }
  // a > 1/2
  if (s_l < 0) {
    if (s_p2 == 0) set("IV.11", 0.0, -2.0 * pi * a, -2.0 * pi * (1.0 - a), 1);
    else set("IV.10", 0.0, -2.0 * pi * (1.0 - a), -2.0 * pi * a, 1);
  } else if (s_l > 0) {
    if (s_p2 == 0) set("IV.13", 0.0, 2.0 * pi * (1.0 - a), -2.0 * pi * (1.0 - a), 0);
    else set("IV.12", 0.0, 2.0 * pi * a, -2.0 * pi * a, 0);
  } else {
    if (s_p1 != 0 && s_p2 != 0)
      set("IV.14", 2.0 * pi * (1.0 - a), -2.0 * pi * (1.0 - 2.0 * a), -2.0 * pi * a, 0);
    else if (s_p1 == 0) set("IV.15.a", 2.0 * pi * a, 0.0, -2.0 * pi * a, 0);
    else set("IV.15.b", 2.0 * pi * (1.0 - a), 0.0, -2.0 * pi * (1.0 - a), 0);
  }
  return out;
}

}  // namespace ablev
