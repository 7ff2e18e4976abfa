#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ablev {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix2d = Eigen::Matrix2d;
using Vector2c = Eigen::Vector2cd;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Magnetic flux parameter, restricted to the open interval (0,1).
struct Flux {
  double value;
  explicit Flux(double alpha) : value(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("flux must lie in (0,1), got " + std::to_string(alpha));
  }
};

// ---------------------------------------------------------------------------
// Error types. All derive from NumericsError so callers can distinguish
// numerical conditions from plain input errors (std::invalid_argument etc.).
// ---------------------------------------------------------------------------

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A raw phase step of magnitude >= pi/2 was seen; the caller must subdivide.
struct RefinementNeeded : NumericsError {
  std::size_t index;  // offending step: between samples[index] and samples[index+1]
  explicit RefinementNeeded(std::size_t k)
      : NumericsError("phase step >= pi/2 at sample " + std::to_string(k)), index(k) {}
};

/// Evaluation at a pole of Gamma / digamma (non-positive integer argument).
struct PoleError : NumericsError {
  using NumericsError::NumericsError;
};

/// A case-discriminating quantity sits within tolerance of a case boundary.
struct DegenerateCase : NumericsError {
  using NumericsError::NumericsError;
};

struct KernelDimension : NumericsError {
  using NumericsError::NumericsError;
};

struct CountMismatch : NumericsError {
  using NumericsError::NumericsError;
};

struct NonConvergence : NumericsError {
  using NumericsError::NumericsError;
};

struct BracketFailure : NumericsError {
  using NumericsError::NumericsError;
};

struct SingularBracket : NumericsError {
  using NumericsError::NumericsError;
};

struct VortexOnPlaquette : NumericsError {
  using NumericsError::NumericsError;
};

struct IntegerDrift : NumericsError {
  using NumericsError::NumericsError;
};

// ---------------------------------------------------------------------------
// Small matrix helpers used throughout.
// ---------------------------------------------------------------------------

/// Frobenius norm of M*M - 1; zero for exactly unitary M.
inline double unitarity_residual(const Matrix2c& m) {
  return (m.adjoint() * m - Matrix2c::Identity()).norm();
}

/// Singular values of a 2x2 complex matrix, descending. sigma_min is computed
/// as |det|/sigma_max, which stays accurate near rank deficiency (the A*A
/// eigenvalue route would lose half the precision there).
inline std::pair<double, double> singular_values(const Matrix2c& a) {
  const double f2 = a.squaredNorm();
  const double d = std::abs(a.determinant());
  const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * d * d));
  const double smax = std::sqrt(0.5 * (f2 + disc));
  return {smax, smax > 0.0 ? d / smax : 0.0};
}

inline double smallest_singular_value(const Matrix2c& a) { return singular_values(a).second; }

}  // namespace ablev
