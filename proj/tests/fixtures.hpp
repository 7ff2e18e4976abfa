#pragma once

// Test-side aliases for the library's table fixtures plus small matrix
// builders shared across the suites.

#include <cmath>

#include "ablev/table_suite.hpp"

namespace fixtures {

using ablev::AdmissiblePair;
using ablev::Complex;
using ablev::Matrix2c;
using ablev::pi;
using TableRow = ablev::TableFixture;

inline const std::vector<TableRow>& table_rows() { return ablev::table_fixtures(); }

inline Matrix2c m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix2c m;
  m << a, b, c, d;
  return m;
}

inline Matrix2c diag2(Complex a, Complex b) { return m2(a, 0.0, 0.0, b); }

// U with eigenvalues (-1, e^{i theta}) and eigenvectors rotated by tau.
inline Matrix2c rotated_unitary(double theta, double tau) {
  const Matrix2c w = m2(std::cos(tau), -std::sin(tau), std::sin(tau), std::cos(tau));
  return w * diag2(-1.0, std::polar(1.0, theta)) * w.adjoint();
}

inline AdmissiblePair pair_cd(const Matrix2c& c, const Matrix2c& d) { return {c, d}; }

inline AdmissiblePair pair_u(const Matrix2c& u) { return ablev::from_unitary({u}); }

}  // namespace fixtures
