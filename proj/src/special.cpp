#include "ablev/special.hpp"

#include <cmath>

namespace ablev {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set, as used by Boost and NR).
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double half_log_two_pi = 0.91893853320467274178032973640562;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log Gamma for Re z >= 1/2 only.
Complex log_gamma_right(Complex z) {
  const Complex zm1 = z - 1.0;
  Complex acc = lanczos_c[0];
  for (int k = 1; k < 9; ++k) acc += lanczos_c[k] / (zm1 + double(k));
  const Complex t = zm1 + lanczos_g + 0.5;
  return half_log_two_pi + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// log(sin(pi z)) with the branch that keeps the reflection formula continuous
// off the real axis (cf. cephes/scipy). Grows like -i pi z for Im z > 0, so
// no overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
  if (z.imag() > 0.0) {
    // sin(pi z) = -e^{-i pi z} (1 - e^{2 pi i z}) / (2i)
    const Complex w = std::exp(Complex(0.0, 2.0 * pi) * z);
    return Complex(0.0, -pi) * z + std::log(1.0 - w) + Complex(-std::log(2.0), pi / 2.0);
  }
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  return std::log(Complex(std::sin(pi * z.real()), 0.0));
}

}  // namespace

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma pole at non-positive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z).
  return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex gamma_phase_ratio(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_phase_ratio requires a > 0");
  const double phase = 2.0 * log_gamma(Complex(a, x)).imag();
  return Complex(std::cos(phase), std::sin(phase));
}

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z)) throw PoleError("digamma pole at non-positive integer");
  if (z.real() < 0.0) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    return digamma(1.0 - z) - pi / std::tan(pi * z);
  }
  Complex acc = 0.0;
  while (std::abs(z) < 8.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B_2..B_14.
  static constexpr double coef[7] = {
      1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
  };
  const Complex inv2 = 1.0 / (z * z);
  Complex term = inv2;
  Complex series = 0.0;
  for (double c : coef) {
    series += c * term;
    term *= inv2;
  }
  return acc + std::log(z) - 0.5 / z - series;
}

PhaseTrack unwrap(std::span<const Complex> samples) {
  if (samples.empty()) throw std::invalid_argument("unwrap: empty sample sequence");
  PhaseTrack track;
  track.samples.assign(samples.begin(), samples.end());
  track.unwrapped_args.resize(samples.size());
  if (samples[0] == Complex(0.0, 0.0)) throw std::invalid_argument("unwrap: zero sample");
  track.unwrapped_args[0] = std::arg(samples[0]);
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    if (samples[k + 1] == Complex(0.0, 0.0)) throw std::invalid_argument("unwrap: zero sample");
    const double step = std::arg(samples[k + 1] * std::conj(samples[k]));
    if (!(std::abs(step) < pi / 2.0)) throw RefinementNeeded(k);
    track.unwrapped_args[k + 1] = track.unwrapped_args[k] + step;
  }
  return track;
}

}  // namespace ablev
