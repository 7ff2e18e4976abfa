#include "ablev/winding.hpp"

#include <cmath>

#include "ablev/special.hpp"

namespace ablev {

namespace {

constexpr std::size_t max_edge_samples = std::size_t(1) << 20;

struct Transform {
  double (*fwd)(double);
  double (*inv)(double);
};

Transform transform_for(EdgeScale scale) {
  if (scale == EdgeScale::Sinh) return {[](double x) { return std::asinh(x); },
                                        [](double u) { return std::sinh(u); }};
  return {[](double k) { return std::log(k); }, [](double u) { return std::exp(u); }};
}

// A node on the edge: native parameter (infinite at the ends, or 0 for the
// log scale), cached value and determinant.
struct Node {
  double p;
  Matrix2c value;
  Complex det;
};

bool is_endpoint(double p, EdgeScale scale) {
  if (std::isinf(p)) return true;
  return scale == EdgeScale::Log && p == 0.0;
}

}  // namespace

double edge_variation(const std::function<Matrix2c(double)>& value_at, double lo, double hi,
                      EdgeScale scale, EdgeSamples* out, int initial_points,
                      std::pair<double, double> window) {
  const Transform tr = transform_for(scale);
  const auto make_node = [&](double p) {
    Node n;
    n.p = p;
    n.value = value_at(p);
    n.det = n.value.determinant();
    if (n.det == Complex(0.0, 0.0))
      throw std::invalid_argument("edge_variation: vanishing determinant sample");
    return n;
  };

  // Initial grid: endpoints plus a uniform grid in the transformed coordinate.
  double u_lo = scale == EdgeScale::Sinh ? std::asinh(-40.0) : std::log(1e-8);
  double u_hi = scale == EdgeScale::Sinh ? std::asinh(40.0) : std::log(1e8);
  if (window.first < window.second) {
    u_lo = window.first;
    u_hi = window.second;
  }
  // Keep the default sample spacing when the window is widened.
  const int n0 =
      initial_points > 0 ? initial_points : std::max(257, int((u_hi - u_lo) / 0.143) + 1);
  std::vector<Node> nodes;
  nodes.reserve(n0 + 2);
  nodes.push_back(make_node(lo));
  for (int i = 0; i < n0; ++i)
    nodes.push_back(make_node(tr.inv(u_lo + (u_hi - u_lo) * i / double(n0 - 1))));
  nodes.push_back(make_node(hi));

  // Refine until every raw det-phase step is below pi/2.
  const double step_limit = 0.5 * pi;
  for (;;) {
    std::vector<Node> inserts;
    std::vector<std::size_t> positions;  // insert before nodes[k+1]
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const double step = std::arg(nodes[k + 1].det * std::conj(nodes[k].det));
      if (std::abs(step) < step_limit) continue;
      double p_new;
      if (is_endpoint(nodes[k].p, scale)) {
        p_new = tr.inv(tr.fwd(nodes[k + 1].p) - 2.0);  // push outward, geometric
      } else if (is_endpoint(nodes[k + 1].p, scale)) {
        p_new = tr.inv(tr.fwd(nodes[k].p) + 2.0);
      } else {
        p_new = tr.inv(0.5 * (tr.fwd(nodes[k].p) + tr.fwd(nodes[k + 1].p)));
      }
      inserts.push_back(make_node(p_new));
      positions.push_back(k + 1);
    }
    if (inserts.empty()) break;
    if (nodes.size() + inserts.size() > max_edge_samples)
      throw NonConvergence("edge_variation: refinement exceeded 2^20 samples");
    std::vector<Node> merged;
    merged.reserve(nodes.size() + inserts.size());
    std::size_t next = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      while (next < positions.size() && positions[next] == k) {
        merged.push_back(std::move(inserts[next]));
        ++next;
      }
      merged.push_back(std::move(nodes[k]));
    }
    nodes = std::move(merged);
  }

  std::vector<Complex> dets;
  dets.reserve(nodes.size());
  for (const auto& n : nodes) dets.push_back(n.det);
  const PhaseTrack track = unwrap(dets);

  if (out) {
    out->params.clear();
    out->values.clear();
    out->dets.clear();
    for (const auto& n : nodes) {
      out->params.push_back(n.p);
      out->values.push_back(n.value);
      out->dets.push_back(n.det);
    }
    out->variation = track.variation();
  }
  return track.variation();
}

// The scattering edge turns where the momentum powers b_j(kappa)^2 cross the
// gauge-invariant coupling scales (the singular values of pi/(2 sin pi a)
// D^-1 C, or |ell| in the rank-one regime). For extreme alpha those crossings
// sit far outside the default window, kappa ~ tau^{1/(2 alpha)}, and missing
// them silently drops a full turn of det-phase.
static std::pair<double, double> kappa_window(const AdmissiblePair& pair, Flux alpha) {
  double v_lo = std::log(1e-8), v_hi = std::log(1e8);
  const double a = alpha.value;
  const double s = std::sin(pi * a);
  std::vector<double> targets;
  const auto [sd_max, sd_min] = singular_values(pair.D);
  if (sd_max < 1e-12 * (1.0 + pair.C.norm())) return {v_lo, v_hi};  // S is constant
  if (sd_min > 1e-9 * sd_max) {
    const Matrix2c e = pair.D.inverse() * pair.C;
    const auto [e_max, e_min] = singular_values(e);
    targets = {0.5 * pi / s * e_max, 0.5 * pi / s * e_min};
  } else {
    try {
      targets = {std::abs(ell_and_kernel(pair, alpha).first)};
    } catch (const KernelDimension&) {
      return {v_lo, v_hi};
    }
  }
  const double c1 = std::pow(std::tgamma(1.0 - a) / std::pow(2.0, a), 2.0);
  const double c2 = std::pow(std::tgamma(a) / std::pow(2.0, 1.0 - a), 2.0);
  for (double tau : targets) {
    if (!(tau > 1e-300)) continue;
    for (double v : {(std::log(tau) - std::log(c1)) / (2.0 * a),
                     (std::log(tau) - std::log(c2)) / (2.0 * (1.0 - a))}) {
      v_lo = std::min(v_lo, v - 12.0);
      v_hi = std::max(v_hi, v + 12.0);
    }
  }
  return {std::max(v_lo, -600.0), std::min(v_hi, 600.0)};
}

LevinsonReport total_winding(const AdmissiblePair& pair, Flux alpha, BoundaryLoop* loop) {
  const EdgeFunctionSet edges = gamma_edges(pair, alpha);
  const double inf = std::numeric_limits<double>::infinity();
  const std::pair<double, double> kwin = kappa_window(pair, alpha);

  BoundaryLoop local;
  BoundaryLoop& bl = loop ? *loop : local;
  for (int j = 0; j < 4; ++j) bl.edges[j].edge_id = j + 1;

  LevinsonReport rep;
  rep.phi1 = edge_variation([&](double x) { return edges.gamma1(x); }, -inf, inf,
                            EdgeScale::Sinh, &bl.edges[0]);
  rep.phi2 = edge_variation([&](double k) { return edges.gamma2(k); }, 0.0, inf,
                            EdgeScale::Log, &bl.edges[1], 0, kwin);
  // B3 and B4 are traversed backwards around the square.
  rep.phi3 = -edge_variation([&](double x) { return edges.gamma3(x); }, -inf, inf,
                             EdgeScale::Sinh, &bl.edges[2]);
  rep.phi4 = -edge_variation([&](double k) { return edges.gamma4(k); }, 0.0, inf,
                             EdgeScale::Log, &bl.edges[3]);

  const double raw = rep.sum() / (2.0 * pi);
  rep.wind = int(std::lround(raw));
  rep.integer_residual = std::abs(raw - rep.wind);
  rep.bound_count = negative_count_cdstar(pair);

  double corner = 0.0;
  corner = std::max(corner, (edges.gamma1(inf) - edges.gamma2(0.0)).norm());
  corner = std::max(corner, (edges.gamma2(inf) - edges.gamma3(inf)).norm());
  corner = std::max(corner, (edges.gamma3(-inf) - edges.gamma4(inf)).norm());
  corner = std::max(corner, (edges.gamma4(0.0) - edges.gamma1(-inf)).norm());
  rep.max_corner_residual = corner;
  bl.max_corner_residual = corner;

  try {
    rep.case_label = classify(pair, alpha);
  } catch (const DegenerateCase&) {
    rep.degenerate = true;
    rep.case_label.label = "degenerate";
  }

  if (rep.integer_residual > 1e-6)
    throw IntegerDrift("total_winding: winding " + std::to_string(raw) +
                       " is not an integer within 1e-6");
  return rep;
}

std::pair<bool, LevinsonReport> levinson_check(const AdmissiblePair& pair, Flux alpha) {
  LevinsonReport rep = total_winding(pair, alpha);
  bool ok = rep.wind == -rep.bound_count;
  if (!rep.degenerate) {
    const auto close = [](double got, double want) {
      return std::abs(got - want) <= 1e-6 * (1.0 + std::abs(want));
    };
    ok = ok && close(rep.phi1, rep.case_label.phi1) && close(rep.phi2, rep.case_label.phi2) &&
         close(rep.phi3, rep.case_label.phi3) && rep.phi4 == 0.0 &&
         rep.bound_count == rep.case_label.bound_states;
  }
  return {ok, rep};
}

double var_phi_ab(double a, double b, double cutoff) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("var_phi_ab requires a, b > 0");
  const double X = cutoff;

  // (1/i) phi^-1 phi' = 2 Re[psi(a+ix) - psi(b+ix)], even in x.
  const auto integrand = [&](double x) {
    return 2.0 * (digamma(Complex(a, x)) - digamma(Complex(b, x))).real();
  };

  // Gauss-Legendre 16-point panels, geometric from the smallest feature scale.
  static const double gl_x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                 0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
  static const double gl_w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                 0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
  const auto panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
      s += gl_w[i] * (integrand(c - h * gl_x[i]) + integrand(c + h * gl_x[i]));
    return s * h;
  };

  double integral = 0.0;
  const double first = std::min({a, b, 1.0}) / 8.0;
  double left = 0.0, right = std::min(first, X);
  while (left < X) {
    integral += panel(left, right);
    left = right;
    right = std::min(X, right * 1.5);
    if (right <= left) right = X;
  }
  integral *= 2.0;  // even integrand

  // Tail from the asymptotic expansion of psi, integrated in closed form.
  const auto tail_half = [&](double y) {
    // int_X^inf of the per-argument pieces, with sign conventions folded in.
    const double t_log = -(X * std::log(y * y + X * X) + 2.0 * y * std::atan(X / y));
    const double t_half = std::atan(X / y);                      // from -y/(y^2+x^2)
    const double t_b2 = X / (6.0 * (y * y + X * X));             // from -(1/6)Re z^-2
    const double t_b4 = (1.0 / 180.0) * std::imag(std::pow(Complex(y, X), -3.0));
    return t_log + t_half + t_b2 + t_b4;
  };
  // The ln((a^2+x^2)/(b^2+x^2)) piece contributes pi(a-b) from the arctan limits.
  const double tail = 2.0 * (pi * (a - b) + tail_half(a) - tail_half(b));

  return integral + tail;
}

double var_phi_m(int m, Flux alpha, Complex c) {
  const double inf = std::numeric_limits<double>::infinity();
  const auto value = [&](double x) {
    Matrix2c v = Matrix2c::Identity();
    v(0, 0) = phi_minus(m, alpha, x) + c * phi_tilde(m, alpha, x);
    return v;
  };
  return edge_variation(value, -inf, inf, EdgeScale::Sinh);
}

}  // namespace ablev
