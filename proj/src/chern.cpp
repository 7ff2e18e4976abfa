#include "ablev/chern.hpp"

#include <cmath>

#include "ablev/scattering.hpp"
#include "ablev/weyl.hpp"

namespace ablev {

namespace {

constexpr Complex iu{0.0, 1.0};

double coeff_a(const ManifoldSpec& s, double rho) {
  return rho * rho * s.r1 + (1.0 - rho * rho) * s.r2;
}
double coeff_b(const ManifoldSpec& s, double rho) {
  return (1.0 - rho * rho) * s.r1 + rho * rho * s.r2;
}
double off_f(const ManifoldSpec& s, double rho) {
  return rho * std::sqrt(std::max(0.0, 1.0 - rho * rho)) * (s.r1 - s.r2);
}

// det G as a function of z at fixed rho; the root is the bound-state energy.
double det_g(const ManifoldSpec& s, double rho, double z) {
  const Matrix2d m = weyl_m(Flux(s.alpha), z);
  const double f = off_f(s, rho);
  return (m(0, 0) + coeff_a(s, rho)) * (m(1, 1) + coeff_b(s, rho)) - f * f;
}

Vector2c smallest_singular_vector(const Matrix2c& m) {
  Eigen::JacobiSVD<Matrix2c> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(1);
}

}  // namespace

ManifoldSpec::ManifoldSpec(Complex lambda1, Complex lambda2, Flux a)
    : l1(lambda1), l2(lambda2), alpha(a.value) {
  if (std::abs(std::abs(l1) - 1.0) > 1e-12 || std::abs(std::abs(l2) - 1.0) > 1e-12)
    throw std::invalid_argument("manifold eigenvalues must have modulus 1");
  if (!(l1.imag() < 0.0 && l2.imag() > 0.0))
    throw std::invalid_argument("manifold requires Im l1 < 0 < Im l2");
  r1 = std::tan(0.5 * std::arg(l1));
  r2 = std::tan(0.5 * std::arg(l2));
}

ExtensionPoint manifold_unitary(const ManifoldSpec& spec, const ManifoldPoint& pt) {
  const double rho = pt.rho;
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  const double w = rho * std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const Complex diff = spec.l1 - spec.l2;
  Matrix2c u;
  u(0, 0) = rho * rho * spec.l1 + (1.0 - rho * rho) * spec.l2;
  u(0, 1) = w * std::polar(1.0, pt.phi) * diff;
  u(1, 0) = w * std::polar(1.0, -pt.phi) * diff;
  u(1, 1) = (1.0 - rho * rho) * spec.l1 + rho * rho * spec.l2;
  return {u};
}

double solve_z(const ManifoldSpec& spec, const ManifoldPoint& pt) {
  // det G -> r1 r2 < 0 as z -> 0- and -> +inf as z -> -inf; bisect on log(-z).
  double w_lo = std::log(1e-14), w_hi = std::log(1e14);
  double f_lo = det_g(spec, pt.rho, -std::exp(w_lo));
  double f_hi = det_g(spec, pt.rho, -std::exp(w_hi));
  // Orient so f(w_lo) < 0 < f(w_hi); w increases toward large -z.
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw BracketFailure("solve_z: no sign change on (-z) in [1e-14, 1e14]");
  while (w_hi - w_lo > 1e-13) {
    const double w = 0.5 * (w_lo + w_hi);
    if (det_g(spec, pt.rho, -std::exp(w)) < 0.0)
      w_lo = w;
    else
      w_hi = w;
  }
  return -std::exp(0.5 * (w_lo + w_hi));
}

Matrix2c g_matrix(const ManifoldSpec& spec, const ManifoldPoint& pt) {
  const double z = solve_z(spec, pt);
  const Matrix2d m = weyl_m(Flux(spec.alpha), z);
  Matrix2c g;
  g(0, 0) = m(0, 0) + coeff_a(spec, pt.rho);
  g(1, 1) = m(1, 1) + coeff_b(spec, pt.rho);
  g(0, 1) = off_f(spec, pt.rho) * std::polar(1.0, pt.phi);
  g(1, 0) = std::conj(g(0, 1));
  return g;
}

std::string to_string(ChernMethod m) {
  return m == ChernMethod::boundary_integral ? "boundary_integral" : "lattice_plaquette";
}

ChernResult chern_boundary(const ManifoldSpec& spec, const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) throw std::invalid_argument("chern_boundary needs >= 2 eps values");
  for (double e : eps_list)
    if (!(e > 0.0 && e <= 0.2)) throw std::invalid_argument("eps values must lie in (0, 0.2]");

  constexpr int n_phi = 256;
  std::vector<double> s2(eps_list.size()), val(eps_list.size());
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    const double eps = eps_list[k];
    const double f = off_f(spec, eps);
    const double g = g_matrix(spec, {eps, 0.0})(0, 0).real();  // phi-independent
    double acc = 0.0;
    for (int j = 0; j < n_phi; ++j) acc += f * f / (f * f + g * g);  // trapezoid, periodic
    val[k] = acc / n_phi;  // (1/2pi) * integral; integrand is phi-constant here
    s2[k] = eps * eps;
  }

  // Neville extrapolation in eps^2 to 0; ch(E) = -ch(H) = lim of the integral.
  const int n = int(val.size());
  std::vector<double> tab = val;
  double value = tab[0], prev = tab[0];
  for (int m = 1; m < n; ++m) {
    for (int i = n - 1; i >= m; --i)
      tab[i] = tab[i] + s2[i] * (tab[i] - tab[i - 1]) / (s2[i - m] - s2[i]);
    prev = value;
    value = tab[n - 1];
  }
  if (std::abs(value - prev) > 1e-4)
    throw NonConvergence("chern_boundary: extrapolated sequence not Cauchy at 1e-4");

  ChernResult res;
  res.value = value;
  res.method = ChernMethod::boundary_integral;
  res.grid = std::to_string(eps_list.size()) + " eps x " + std::to_string(n_phi) + " phi";
  res.integer_residual = std::abs(value - std::round(value));
  return res;
}

double lattice_total_flux(const std::function<Vector2c(int, int)>& section, int n_rho,
                          int n_phi, std::vector<PlaquetteFlux>* dump) {
  std::vector<Vector2c> psi(std::size_t(n_rho) * n_phi);
  for (int i = 0; i < n_rho; ++i)
    for (int j = 0; j < n_phi; ++j) psi[std::size_t(i) * n_phi + j] = section(i, j);

  const auto at = [&](int i, int j) -> const Vector2c& {
    return psi[std::size_t(i) * n_phi + ((j % n_phi) + n_phi) % n_phi];
  };
  const auto link = [&](const Vector2c& u, const Vector2c& v) {
    const Complex ov = u.dot(v);
    if (std::abs(ov) < 1e-12)
      throw VortexOnPlaquette("lattice: neighboring sections nearly orthogonal");
    return ov / std::abs(ov);
  };

  double total = 0.0;
  for (int i = 0; i + 1 < n_rho; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const Complex hol = link(at(i, j), at(i + 1, j)) * link(at(i + 1, j), at(i + 1, j + 1)) *
                          std::conj(link(at(i, j + 1), at(i + 1, j + 1))) *
                          std::conj(link(at(i, j), at(i, j + 1)));
      const double flux = std::arg(hol);
      if (std::abs(flux) >= pi - 0.1)
        throw VortexOnPlaquette("lattice: plaquette flux too close to pi; grid too coarse");
      if (dump) dump->push_back({double(i), double(j), flux});
      total += flux;
    }
  return total / (2.0 * pi);
}

namespace {

double lattice_value(const ManifoldSpec& spec, int n_rho, int n_phi, int orientation,
                     std::vector<PlaquetteFlux>* dump) {
  if (n_rho < 32 || n_phi < 32) throw std::invalid_argument("lattice grid must be >= 32x32");
  if (orientation != 1 && orientation != -1)
    throw std::invalid_argument("orientation must be +1 or -1");

  // z and the diagonal of G depend on rho only; cache per row.
  std::vector<double> g11(n_rho), g22(n_rho), f(n_rho);
  for (int i = 0; i < n_rho; ++i) {
    const double rho = double(i) / (n_rho - 1);
    const double z = solve_z(spec, {rho, 0.0});
    const Matrix2d m = weyl_m(Flux(spec.alpha), z);
    g11[i] = m(0, 0) + coeff_a(spec, rho);
    g22[i] = m(1, 1) + coeff_b(spec, rho);
    f[i] = off_f(spec, rho);
  }

  const auto section = [&](int i, int j) -> Vector2c {
    if (i == 0) return Vector2c(1.0, 0.0);            // exact pole chart at rho = 0
    if (i == n_rho - 1) return Vector2c(0.0, 1.0);    // and at rho = 1
    const double phi = orientation * 2.0 * pi * j / n_phi;
    Matrix2c g;
    g(0, 0) = g11[i];
    g(1, 1) = g22[i];
    g(0, 1) = f[i] * std::polar(1.0, phi);
    g(1, 0) = std::conj(g(0, 1));
    return smallest_singular_vector(g);
  };
  // Reversing the phi traversal conjugates every holonomy, so the total flux
  // negates without any extra factor. The plaquette walk below runs in
  // (rho, phi) order; the positively oriented chart of X is (phi, rho),
  // whence the overall minus sign.
  return -lattice_total_flux(section, n_rho, n_phi, dump);
}

}  // namespace

ChernResult chern_lattice(const ManifoldSpec& spec, int n_rho, int n_phi, int orientation) {
  ChernResult res;
  res.value = lattice_value(spec, n_rho, n_phi, orientation, nullptr);
  res.method = ChernMethod::lattice_plaquette;
  res.grid = std::to_string(n_rho) + "x" + std::to_string(n_phi);
  res.integer_residual = std::abs(res.value - std::round(res.value));
  return res;
}

std::vector<PlaquetteFlux> curvature_grid(const ManifoldSpec& spec, int n_rho, int n_phi) {
  std::vector<PlaquetteFlux> dump;
  lattice_value(spec, n_rho, n_phi, +1, &dump);
  for (auto& p : dump) {
    p.rho = p.rho / (n_rho - 1);
    p.phi = 2.0 * pi * p.phi / n_phi;
    p.flux = -p.flux;  // report in the positive orientation of X
  }
  return dump;
}

// ---------------------------------------------------------------------------
// Degree-3 trace over X x square.
// ---------------------------------------------------------------------------

namespace {

struct Slab {
  // Gamma values on the (rho, phi, t) lattice of one edge slab.
  int nr, np, nt;
  double d_r, d_p, d_t;
  std::vector<Matrix2c> g;

  const Matrix2c& at(int i, int j, int k) const {
    return g[(std::size_t(i) * np + ((j % np) + np) % np) * nt + k];
  }
};

// Central differences; second-order one-sided at the rho and t boundaries.
Matrix2c deriv_r(const Slab& s, int i, int j, int k) {
  if (i == 0) return (-3.0 * s.at(0, j, k) + 4.0 * s.at(1, j, k) - s.at(2, j, k)) / (2.0 * s.d_r);
  if (i == s.nr - 1)
    return (3.0 * s.at(i, j, k) - 4.0 * s.at(i - 1, j, k) + s.at(i - 2, j, k)) / (2.0 * s.d_r);
  return (s.at(i + 1, j, k) - s.at(i - 1, j, k)) / (2.0 * s.d_r);
}

Matrix2c deriv_p(const Slab& s, int i, int j, int k) {
  return (s.at(i, j + 1, k) - s.at(i, j - 1 + s.np, k)) / (2.0 * s.d_p);
}

Matrix2c deriv_t(const Slab& s, int i, int j, int k) {
  if (k == 0) return (-3.0 * s.at(i, j, 0) + 4.0 * s.at(i, j, 1) - s.at(i, j, 2)) / (2.0 * s.d_t);
  if (k == s.nt - 1)
    return (3.0 * s.at(i, j, k) - 4.0 * s.at(i, j, k - 1) + s.at(i, j, k - 2)) / (2.0 * s.d_t);
  return (s.at(i, j, k + 1) - s.at(i, j, k - 1)) / (2.0 * s.d_t);
}

// epsilon^{abc} tr[ G^* (d_a G)(d_b G)^* (d_c G) ] over the 6 permutations.
Complex three_form(const Matrix2c& g, const Matrix2c& dr, const Matrix2c& dp,
                   const Matrix2c& dt) {
  const Matrix2c ga = g.adjoint();
  const Matrix2c qr = ga * dr, qp = ga * dp, qt = ga * dt;
  const auto term = [](const Matrix2c& qa, const Matrix2c& db, const Matrix2c& dc) {
    return (qa * (db.adjoint() * dc)).trace();
  };
  return term(qr, dp, dt) + term(qp, dt, dr) + term(qt, dr, dp) -
         term(qr, dt, dp) - term(qp, dr, dt) - term(qt, dp, dr);
}

Complex slab_integral(const Slab& s, double* max_step) {
  Complex acc = 0.0;
  for (int i = 0; i < s.nr; ++i) {
    const double wr = (i == 0 || i == s.nr - 1) ? 0.5 : 1.0;
    for (int j = 0; j < s.np; ++j)
      for (int k = 0; k < s.nt; ++k) {
        const double wt = (k == 0 || k == s.nt - 1) ? 0.5 : 1.0;
        acc += wr * wt *
               three_form(s.at(i, j, k), deriv_r(s, i, j, k), deriv_p(s, i, j, k),
                          deriv_t(s, i, j, k));
        if (max_step && k + 1 < s.nt)
          *max_step = std::max(*max_step, (s.at(i, j, k + 1) - s.at(i, j, k)).norm());
      }
  }
  return acc * (s.d_r * s.d_p * s.d_t);
}

}  // namespace

Trace3Result trace3_degree(const ManifoldSpec& spec, int n_rho, int n_phi, int n_t,
                           bool reverse_loop) {
  if (n_rho < 8 || n_phi < 8 || n_t < 8) throw std::invalid_argument("trace3 grid too coarse");
  const Flux alpha(spec.alpha);

  // Per-site scattering data over X.
  const std::size_t nx = std::size_t(n_rho) * n_phi;
  std::vector<AdmissiblePair> pairs(nx);
  std::vector<Matrix2c> st0(nx), stinf(nx);
  for (int i = 0; i < n_rho; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const ManifoldPoint pt{double(i) / (n_rho - 1), 2.0 * pi * j / n_phi};
      const EdgeFunctionSet e = gamma_edges(from_unitary(manifold_unitary(spec, pt)), alpha);
      pairs[i * n_phi + j] = e.pair;
      st0[i * n_phi + j] = e.st0;
      stinf[i * n_phi + j] = e.stinf;
    }

  // Edge parametrizations. The t-grids are uniform in a sinh-stretched
  // coordinate that concentrates nodes where the symbols actually move
  // (|x| small on the x-edges, ln kappa near 0 on the momentum edges) while
  // still reaching far enough out that the tails are settled to ~1e-6.
  const double x_scale = 0.125;
  const double u_c = std::asinh(1.0e4 / x_scale);
  const double v_scale = 2.0;
  const double v_reach = 14.0 / (2.0 * std::min(spec.alpha, 1.0 - spec.alpha));
  const double w_c = std::asinh(v_reach / v_scale);

  Trace3Result res;
  res.grid = std::to_string(n_rho) + "x" + std::to_string(n_phi) + "x4x" + std::to_string(n_t);

  Slab s;
  s.nr = n_rho;
  s.np = n_phi;
  s.nt = n_t;
  s.d_r = 1.0 / (n_rho - 1);
  s.d_p = 2.0 * pi / n_phi;
  s.g.resize(nx * n_t);

  Complex total = 0.0;
  double max_step = 0.0;
  for (int edge = 1; edge <= 4; ++edge) {
    // Traversal direction of this edge around the square.
    double sign = (edge == 1 || edge == 2) ? 1.0 : -1.0;
    if (reverse_loop) sign = -sign;

    const double t_lo = edge == 2 || edge == 4 ? -w_c : -u_c;
    const double t_hi = edge == 2 || edge == 4 ? w_c : u_c;
    s.d_t = (t_hi - t_lo) / (n_t - 1);

    for (int k = 0; k < n_t; ++k) {
      const double t = t_lo + k * s.d_t;
      if (edge == 4) {
        for (std::size_t q = 0; q < nx; ++q) s.g[q * n_t + k] = Matrix2c::Identity();
      } else if (edge == 2) {
        const double kappa = std::exp(v_scale * std::sinh(t));
        for (std::size_t q = 0; q < nx; ++q)
          s.g[q * n_t + k] = s_matrix(pairs[q], alpha, kappa);
      } else {
        const double x = x_scale * std::sinh(t);
        Matrix2c a = Matrix2c::Zero(), b = Matrix2c::Zero();
        a(0, 0) = phi_minus(0, alpha, x);
        a(1, 1) = phi_minus(-1, alpha, x);
        b(0, 0) = phi_tilde(0, alpha, x);
        b(1, 1) = phi_tilde(-1, alpha, x);
        const auto& st = edge == 1 ? st0 : stinf;
        for (std::size_t q = 0; q < nx; ++q) s.g[q * n_t + k] = a + b * st[q];
      }
    }

    // Same orientation convention as the lattice Chern number: the positive
    // chart of X is (phi, rho), which flips the (rho, phi, t) coordinate sum.
    const Complex contrib = -sign * slab_integral(s, &max_step);
    res.per_edge[edge - 1] = contrib.real() / (24.0 * pi * pi);
    total += contrib;
  }

  if (max_step >= 0.3)
    throw NonConvergence("trace3_degree: adjacent Gamma samples differ by >= 0.3; refine grid");

  total /= 24.0 * pi * pi;
  res.value = total.real();
  res.imag_defect = std::abs(total.imag());
  return res;
}

double continuity_modulus(const ManifoldSpec& spec, const ManifoldPoint& pt,
                          const ManifoldPoint& pt2) {
  const Flux alpha(spec.alpha);
  const AdmissiblePair a = from_unitary(manifold_unitary(spec, pt));
  const AdmissiblePair b = from_unitary(manifold_unitary(spec, pt2));
  const auto entry_gap = [&](double kappa) {
    const Matrix2c d = s_matrix(a, alpha, kappa) - s_matrix(b, alpha, kappa);
    return d.cwiseAbs().maxCoeff();
  };
  double sup = std::max(entry_gap(0.0), entry_gap(std::numeric_limits<double>::infinity()));
  constexpr int n = 1000;
  for (int i = 0; i < n; ++i)
    sup = std::max(sup, entry_gap(std::pow(10.0, -8.0 + 16.0 * i / (n - 1))));
  return sup;
}

}  // namespace ablev
