#include "ablev/scattering.hpp"

#include <cmath>

#include "ablev/special.hpp"

namespace ablev {

namespace {

constexpr Complex iu{0.0, 1.0};

Matrix2c diag(Complex a, Complex b) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// e^{pi x/2} / sin(A + i pi x/2) without overflow, A = (pi/2)(1 + |m+alpha|).
Complex stable_exp_over_sin(double A, double x) {
  const Complex eiA = std::polar(1.0, A);
  if (x >= 0.0)
    return 2.0 * iu / (eiA * std::exp(-pi * x) - std::conj(eiA));
  return 2.0 * iu * std::exp(pi * x) / (eiA - std::conj(eiA) * std::exp(pi * x));
}

// 2x2 complex arithmetic in long double. The three-factor product mixes
// kappa^(2a) and kappa^(2-2a) scales, and the cancellations in the bracket
// solve would otherwise push the unitarity defect of S above 1e-10 at
// extreme kappa.
using CL = std::complex<long double>;
struct M2L {
  CL e[2][2];
};

M2L to_l(const Matrix2c& m) {
  M2L r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.e[i][j] = CL(m(i, j).real(), m(i, j).imag());
  return r;
}

Matrix2c from_l(const M2L& m) {
  Matrix2c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = Complex(double(m.e[i][j].real()), double(m.e[i][j].imag()));
  return r;
}

M2L mul(const M2L& a, const M2L& b) {
  M2L r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
  return r;
}

M2L add(const M2L& a, const M2L& b) {
  M2L r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][j] + b.e[i][j];
  return r;
}

// Solve bracket * X = rhs by column-equilibrated cofactors.
M2L solve_l(M2L b, const M2L& rhs) {
  const long double c0 = std::max(std::abs(b.e[0][0]), std::abs(b.e[1][0]));
  const long double c1 = std::max(std::abs(b.e[0][1]), std::abs(b.e[1][1]));
  if (c0 == 0.0L || c1 == 0.0L) throw SingularBracket("scattering bracket has a zero column");
  for (int i = 0; i < 2; ++i) {
    b.e[i][0] /= c0;
    b.e[i][1] /= c1;
  }
  const CL det = b.e[0][0] * b.e[1][1] - b.e[0][1] * b.e[1][0];
  if (std::abs(det) < 1e-12L) throw SingularBracket("scattering bracket singular at this kappa");
  M2L x;
  for (int j = 0; j < 2; ++j) {
    x.e[0][j] = (b.e[1][1] * rhs.e[0][j] - b.e[0][1] * rhs.e[1][j]) / det / c0;
    x.e[1][j] = (b.e[0][0] * rhs.e[1][j] - b.e[1][0] * rhs.e[0][j]) / det / c1;
  }
  return x;
}

Matrix2c solve_equilibrated(const Matrix2c& bracket, const Matrix2c& rhs) {
  return from_l(solve_l(to_l(bracket), to_l(rhs)));
}

}  // namespace

double channel_delta(int m, Flux alpha) {
  return 0.5 * pi * (std::abs(double(m)) - std::abs(double(m) + alpha.value));
}

Complex phi_minus(int m, Flux alpha, double x) {
  const double delta = channel_delta(m, alpha);
  if (std::isinf(x)) return x < 0 ? Complex(1.0, 0.0) : std::polar(1.0, 2.0 * delta);
  const double am = 0.5 * (std::abs(double(m)) + 1.0);
  const double bm = 0.5 * (std::abs(double(m) + alpha.value) + 1.0);
  return std::polar(1.0, delta) * gamma_phase_ratio(am, 0.5 * x) *
         std::conj(gamma_phase_ratio(bm, 0.5 * x));
}

Complex phi_tilde(int m, Flux alpha, double x) {
  if (m != 0 && m != -1) throw std::invalid_argument("phi_tilde: channel must be 0 or -1");
  if (std::isinf(x)) return x < 0 ? Complex(0.0, 0.0) : Complex(1.0, 0.0);
  const double beta = std::abs(double(m) + alpha.value);  // in (0,1)
  const double am = 0.5 * (std::abs(double(m)) + 1.0);
  const double bm = 0.5 * (1.0 + beta);
  const double A = 0.5 * pi * (1.0 + beta);
  // The Gamma pair with argument sum 1 is rewritten through the reflection
  // formula, which cancels the e^{pi x/2} growth analytically.
  return 0.5 * std::polar(1.0, -0.5 * pi * std::abs(double(m))) *
         gamma_phase_ratio(am, 0.5 * x) * std::conj(gamma_phase_ratio(bm, 0.5 * x)) *
         stable_exp_over_sin(A, x);
}

std::pair<double, double> b_factors(Flux alpha, double kappa) {
  const double a = alpha.value;
  return {std::tgamma(1.0 - a) * std::pow(kappa, a) / std::pow(2.0, a),
          std::tgamma(a) * std::pow(kappa, 1.0 - a) / std::pow(2.0, 1.0 - a)};
}

Matrix2c phase_matrix(Flux alpha) {
  const double a = alpha.value;
  return diag(std::polar(1.0, -0.5 * pi * a), std::polar(1.0, -0.5 * pi * (1.0 - a)));
}

Matrix2c s_tilde(const AdmissiblePair& pair, Flux alpha, double kappa) {
  if (!(kappa > 0.0) || std::isinf(kappa))
    throw std::invalid_argument("s_tilde: kappa must be finite and positive");
  const long double a = alpha.value;
  const long double lpi = 3.14159265358979323846264338327950288L;
  const long double s = std::sin(lpi * a);
  const long double b1 = std::tgamma(1.0L - a) * std::pow((long double)kappa, a) / std::pow(2.0L, a);
  const long double b2 = std::tgamma(a) * std::pow((long double)kappa, 1.0L - a) / std::pow(2.0L, 1.0L - a);
  const CL p1 = b1 * std::polar(1.0L, -0.5L * lpi * a);
  const CL p2 = b2 * std::polar(1.0L, -0.5L * lpi * (1.0L - a));

  const M2L d = to_l(pair.D);
  M2L l = to_l(pair.C);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) l.e[i][j] *= 0.5L * lpi / s;

  M2L p = {{{p1, CL(0)}, {CL(0), p2}}};
  M2L p2m = {{{p1 * p1, CL(0)}, {CL(0), p2 * p2}}};
  M2L j = {{{CL(1), CL(0)}, {CL(0), CL(-1)}}};

  const M2L bracket = add(mul(d, p2m), l);
  const M2L rhs = mul(d, mul(p, j));
  M2L x = mul(p, solve_l(bracket, rhs));
  const CL pref = CL(0.0L, 2.0L) * s;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) x.e[r][c] *= pref;
  return from_l(x);
}

Matrix2c s_asymptotic(const AdmissiblePair& pair, Flux alpha, End end) {
  const double a = alpha.value;
  const double scale = 1.0 + pair.C.norm() + pair.D.norm();
  const bool half = std::abs(a - 0.5) <= 1e-9;
  const Complex ep = std::polar(1.0, pi * a);   // e^{+i pi a}
  const Complex em = std::conj(ep);             // e^{-i pi a}

  if (end == End::Infinity) {
    if (pair.D.norm() <= 1e-9 * scale) return diag(em, ep);  // D = 0: S is constant
    const auto [smax, smin] = singular_values(pair.D);
    if (smin > 1e-9 * smax) return diag(ep, em);             // det D != 0
    if (smin > 1e-12 * smax)
      throw DegenerateCase("s_asymptotic: rank of D within tolerance of a clause boundary");
    const Vector2c p = kernel_direction(pair.D);
    if (half) {
      const Matrix2c proj = Matrix2c::Identity() - p * p.adjoint();  // onto ker(D)^perp
      return (2.0 * proj - Matrix2c::Identity()) * diag(iu, -iu);
    }
    if (std::abs(p(1)) <= 1e-9) return diag(em, em);  // ker D = (C,0)
    if (std::abs(p(0)) <= 1e-9) return diag(ep, ep);  // ker D = (0,C)
    return a < 0.5 ? diag(em, em) : diag(ep, ep);
  }

  // end == End::Zero: mirrored in C.
  if (pair.C.norm() <= 1e-9 * scale) return diag(ep, em);  // C = 0
  const auto [smax, smin] = singular_values(pair.C);
  if (smin > 1e-9 * smax) return diag(em, ep);             // det C != 0
  if (smin > 1e-12 * smax)
    throw DegenerateCase("s_asymptotic: rank of C within tolerance of a clause boundary");
  const Vector2c q = kernel_direction(pair.C);
  if (half) {
    const Matrix2c proj = Matrix2c::Identity() - q * q.adjoint();  // onto ker(C)^perp
    return (Matrix2c::Identity() - 2.0 * proj) * diag(iu, -iu);
  }
  if (std::abs(q(0)) <= 1e-9) return diag(em, em);  // ker C = (0,C)
  if (std::abs(q(1)) <= 1e-9) return diag(ep, ep);  // ker C = (C,0)
  return a > 0.5 ? diag(em, em) : diag(ep, ep);
}

Matrix2c s_matrix(const AdmissiblePair& pair, Flux alpha, double kappa) {
  if (kappa == 0.0) return s_asymptotic(pair, alpha, End::Zero);
  if (std::isinf(kappa)) return s_asymptotic(pair, alpha, End::Infinity);
  if (!(kappa > 0.0)) throw std::invalid_argument("s_matrix: kappa must be >= 0");
  const Complex ep = std::polar(1.0, pi * alpha.value);
  return diag(std::conj(ep), ep) + s_tilde(pair, alpha, kappa);
}

Matrix2c s_matrix_cayley(const AdmissiblePair& pair, Flux alpha, double kappa) {
  const auto [smax, smin] = singular_values(pair.D);
  if (!(smin > 1e-9 * smax))
    throw std::invalid_argument("s_matrix_cayley requires det D != 0");
  const double a = alpha.value;
  const double s = std::sin(pi * a);
  Matrix2c e = pair.D.inverse() * pair.C;
  e = 0.5 * (e + e.adjoint());
  const Matrix2c l = (0.5 * pi / s) * e;
  const auto [b1, b2] = b_factors(alpha, kappa);
  const Matrix2c binv = diag(1.0 / b1, 1.0 / b2);
  const Matrix2c j = diag(1.0, -1.0);
  const Matrix2c x = binv * l * binv + std::cos(pi * a) * j;
  const Matrix2c phi = phase_matrix(alpha);
  const Matrix2c num = x + iu * s * Matrix2c::Identity();
  const Matrix2c den = x - iu * s * Matrix2c::Identity();
  // num and den commute (both are functions of the self-adjoint X), so the
  // quotient is unambiguous.
  return phi * solve_equilibrated(den, num) * phi * j;
}

Matrix2c EdgeFunctionSet::gamma1(double x) const {
  if (std::isinf(x)) return x < 0 ? Matrix2c::Identity() : s0;
  const Flux a(alpha);
  return diag(phi_minus(0, a, x), phi_minus(-1, a, x)) +
         diag(phi_tilde(0, a, x), phi_tilde(-1, a, x)) * st0;
}

Matrix2c EdgeFunctionSet::gamma2(double kappa) const {
  if (kappa == 0.0) return s0;
  if (std::isinf(kappa)) return sinf;
  return s_matrix(pair, Flux(alpha), kappa);
}

Matrix2c EdgeFunctionSet::gamma3(double x) const {
  if (std::isinf(x)) return x < 0 ? Matrix2c::Identity() : sinf;
  const Flux a(alpha);
  return diag(phi_minus(0, a, x), phi_minus(-1, a, x)) +
         diag(phi_tilde(0, a, x), phi_tilde(-1, a, x)) * stinf;
}

EdgeFunctionSet gamma_edges(const AdmissiblePair& pair, Flux alpha) {
  EdgeFunctionSet set;
  set.pair = pair;
  set.alpha = alpha.value;
  set.s0 = s_asymptotic(pair, alpha, End::Zero);
  set.sinf = s_asymptotic(pair, alpha, End::Infinity);
  const Complex ep = std::polar(1.0, pi * alpha.value);
  const Matrix2c free_part = diag(std::conj(ep), ep);
  set.st0 = set.s0 - free_part;
  set.stinf = set.sinf - free_part;
  return set;
}

}  // namespace ablev
