#pragma once

// Test-side oracles, independent of the library's evaluation paths.

#include <cmath>
#include <complex>

namespace oracles {

using Complex = std::complex<double>;

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double gl_x[8] = {0.0950125098376374, 0.2816035507792589,
                                   0.4580167776572274, 0.6178762444026438,
                                   0.7554044083550030, 0.8656312023878318,
                                   0.9445750230732326, 0.9894009349916499};
inline constexpr double gl_w[8] = {0.1894506104550685, 0.1826034150449236,
                                   0.1691565193950025, 0.1495959888165767,
                                   0.1246289712555339, 0.0951585116824928,
                                   0.0622535239386479, 0.0271524594117541};

template <class F>
Complex gl_panel(F&& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  Complex s = 0.0;
  for (int i = 0; i < 8; ++i) s += gl_w[i] * (f(c - h * gl_x[i]) + f(c + h * gl_x[i]));
  return s * h;
}

// Gamma(z) by quadrature of the Euler integral in log coordinates,
//   Gamma(z) = int_-inf^inf exp(z s - e^s) ds,
// valid for Re z > 0. Composite 16-point Gauss-Legendre; the truncation at
// s = -80 and s = 12 + |Im| is far below double precision for moderate z.
inline Complex gamma_quadrature(Complex z) {
  const auto f = [&](double s) { return std::exp(z * s - std::exp(s)); };
  Complex acc = 0.0;
  const double lo = -80.0, hi = 12.0;
  const int panels = 184;  // width 0.5
  for (int i = 0; i < panels; ++i)
    acc += gl_panel(f, lo + (hi - lo) * i / double(panels), lo + (hi - lo) * (i + 1) / double(panels));
  return acc;
}

// Central-difference digamma from a log-gamma evaluator, Richardson refined.
template <class LogGamma>
Complex digamma_fd(LogGamma&& lg, Complex z) {
  const auto d = [&](double h) { return (lg(z + h) - lg(z - h)) / (2.0 * h); };
  const Complex d1 = d(1e-3), d2 = d(5e-4);
  return (4.0 * d2 - d1) / 3.0;  // eliminates the h^2 term
}

}  // namespace oracles
