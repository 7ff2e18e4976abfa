#include "ablev/table_suite.hpp"

#include <cmath>

namespace ablev {

namespace {

Matrix2c m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix2c m;
  m << a, b, c, d;
  return m;
}

Matrix2c diag2(Complex a, Complex b) { return m2(a, 0.0, 0.0, b); }

// U with eigenvalues (-1, e^{i theta}) and eigenvectors rotated by tau;
// tau = 0 puts ker D on the first axis.
Matrix2c rotated_unitary(double theta, double tau) {
  const Matrix2c w = m2(std::cos(tau), -std::sin(tau), std::sin(tau), std::cos(tau));
  return w * diag2(-1.0, std::polar(1.0, theta)) * w.adjoint();
}

std::vector<TableFixture> build() {
  const Matrix2c I = Matrix2c::Identity();
  const Matrix2c Z = Matrix2c::Zero();
  const double t = 0.6;  // generic eigenvector rotation: both kernel components nonzero

  std::vector<TableFixture> rows;
  const auto add = [&](std::string label, AdmissiblePair p, double a, double f1, double f2,
                       double f3, int nb) {
    rows.push_back({std::move(label), std::move(p), a, f1, f2, f3, nb});
  };
  const auto from_u = [](const Matrix2c& u) { return from_unitary({u}); };

  // Special rows.
  add("I", {I, Z}, 0.3, 0, 0, 0, 0);
  add("III", {Z, I}, 0.3, 2 * pi, 0, -2 * pi, 0);

  // det D != 0, det E != 0 (D = 1, C = E self-adjoint).
  add("II.1", {diag2(1, 2), I}, 0.3, 0, 2 * pi, -2 * pi, 0);
  add("II.2", {m2(1, 3, 3, 1), I}, 0.3, 0, 0, -2 * pi, 1);
  add("II.3", {diag2(-1, -2), I}, 0.3, 0, -2 * pi, -2 * pi, 2);
  add("II.4", {m2(-1, 3, 3, -1), I}, 0.3, 0, 0, -2 * pi, 1);
  add("II.5", {m2(0, 2, 2, 0), I}, 0.3, 0, 0, -2 * pi, 1);
  add("II.6", {diag2(2, -1), I}, 0.3, 0, 0, -2 * pi, 1);

  // det D != 0, det E = 0.
  const Matrix2c ones = m2(1, 1, 1, 1);
  {
    const double a = 0.3;
    add("II.7.a", {diag2(0, 2), I}, a, 2 * pi * a, 2 * pi * (1 - a), -2 * pi, 0);
    add("II.7.b", {ones, I}, a, 2 * pi * a, 2 * pi * (1 - a), -2 * pi, 0);
    add("II.8.a", {diag2(0, -2), I}, a, 2 * pi * a, -2 * pi * a, -2 * pi, 1);
    add("II.8.b", {-ones, I}, a, 2 * pi * a, -2 * pi * a, -2 * pi, 1);
  }
  {
    const double a = 0.7;
    add("II.9.a", {diag2(2, 0), I}, a, 2 * pi * (1 - a), 2 * pi * a, -2 * pi, 0);
    add("II.9.b", {ones, I}, a, 2 * pi * (1 - a), 2 * pi * a, -2 * pi, 0);
    add("II.10.a", {diag2(-2, 0), I}, a, 2 * pi * (1 - a), -2 * pi * (1 - a), -2 * pi, 1);
    add("II.10.b", {-ones, I}, a, 2 * pi * (1 - a), -2 * pi * (1 - a), -2 * pi, 1);
  }
  add("II.11", {ones, I}, 0.5, pi, pi, -2 * pi, 0);
  add("II.12", {-ones, I}, 0.5, pi, -pi, -2 * pi, 1);

  // dim ker D = 1, alpha = 1/2. ell < 0 iff theta in (0, pi).
  add("IV.1", from_u(rotated_unitary(-pi / 2, t)), 0.5, 0, pi, -pi, 0);
  add("IV.2", from_u(rotated_unitary(0.0, t)), 0.5, pi, 0, -pi, 0);
  add("IV.3", from_u(rotated_unitary(pi / 2, t)), 0.5, 0, -pi, -pi, 1);

  // dim ker D = 1, alpha < 1/2.
  {
    const double a = 0.3;
    add("IV.4", from_u(rotated_unitary(pi / 2, t)), a, 0, -2 * pi * a, -2 * pi * (1 - a), 1);
    add("IV.5", from_u(diag2(std::polar(1.0, pi / 2), -1)), a, 0, -2 * pi * (1 - a),
        -2 * pi * a, 1);
    add("IV.6", from_u(rotated_unitary(-pi / 2, t)), a, 0, 2 * pi * (1 - a), -2 * pi * (1 - a),
        0);
    add("IV.7", from_u(diag2(std::polar(1.0, -pi / 2), -1)), a, 0, 2 * pi * a, -2 * pi * a, 0);
    add("IV.8", from_u(rotated_unitary(0.0, t)), a, 2 * pi * a, 2 * pi * (1 - 2 * a),
        -2 * pi * (1 - a), 0);
    add("IV.9.a", from_u(diag2(1, -1)), a, 2 * pi * a, 0, -2 * pi * a, 0);
    add("IV.9.b", from_u(diag2(-1, 1)), a, 2 * pi * (1 - a), 0, -2 * pi * (1 - a), 0);
  }

  // dim ker D = 1, alpha > 1/2.
  {
    const double a = 0.7;
    add("IV.10", from_u(rotated_unitary(pi / 2, t)), a, 0, -2 * pi * (1 - a), -2 * pi * a, 1);
    add("IV.11", from_u(diag2(-1, std::polar(1.0, pi / 2))), a, 0, -2 * pi * a,
        -2 * pi * (1 - a), 1);
    add("IV.12", from_u(rotated_unitary(-pi / 2, t)), a, 0, 2 * pi * a, -2 * pi * a, 0);
    add("IV.13", from_u(diag2(-1, std::polar(1.0, -pi / 2))), a, 0, 2 * pi * (1 - a),
        -2 * pi * (1 - a), 0);
    add("IV.14", from_u(rotated_unitary(0.0, t)), a, 2 * pi * (1 - a), -2 * pi * (1 - 2 * a),
        -2 * pi * a, 0);
    add("IV.15.a", from_u(diag2(1, -1)), a, 2 * pi * a, 0, -2 * pi * a, 0);
    add("IV.15.b", from_u(diag2(-1, 1)), a, 2 * pi * (1 - a), 0, -2 * pi * (1 - a), 0);
  }

  return rows;
}

}  // namespace

const std::vector<TableFixture>& table_fixtures() {
  static const std::vector<TableFixture> rows = build();
  return rows;
}

}  // namespace ablev
