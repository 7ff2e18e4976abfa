#include <doctest.h>

#include <cmath>
#include <random>

#include "ablev/special.hpp"
#include "oracles.hpp"

using namespace ablev;

TEST_CASE("log_gamma at standard points") {
  CHECK(std::abs(log_gamma(Complex(1.0, 0.0))) < 1e-14);  // Gamma(1) = 1
  CHECK(std::abs(log_gamma(Complex(2.0, 0.0))) < 1e-14);

  // Gamma(1/2) = sqrt(pi), checked against the quadrature oracle as well.
  const double ln_sqrt_pi = 0.5723649429247001;
  CHECK(log_gamma(Complex(0.5, 0.0)).real() == doctest::Approx(ln_sqrt_pi).epsilon(1e-13));
  const Complex g_half = oracles::gamma_quadrature(Complex(0.5, 0.0));
  CHECK(std::abs(std::exp(log_gamma(Complex(0.5, 0.0))) - g_half) < 1e-12);
}

TEST_CASE("log_gamma against quadrature oracle at complex points") {
  for (Complex z : {Complex(1.0, 1.0), Complex(0.5, 0.5), Complex(2.3, -0.7),
                    Complex(0.8, 2.0), Complex(3.5, 4.0)}) {
    const Complex via_impl = std::exp(log_gamma(z));
    const Complex via_quad = oracles::gamma_quadrature(z);
    CHECK(std::abs(via_impl - via_quad) <= 1e-12 * (1.0 + std::abs(via_quad)));
  }
}

TEST_CASE("reflection identity |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)") {
  for (double y : {0.3, 1.0, 2.5, 7.0}) {
    const double lhs = std::exp(2.0 * log_gamma(Complex(0.5, y)).real());
    CHECK(lhs == doctest::Approx(pi / std::cosh(pi * y)).epsilon(1e-12));
  }
  // |Gamma((1+i)/2)|^2 fixture: y = 1/2 in the identity, verified
  // independently by quadrature.
  const Complex g = oracles::gamma_quadrature(Complex(0.5, 0.5));
  CHECK(std::norm(g) == doctest::Approx(pi / std::cosh(pi * 0.5)).epsilon(1e-11));
  CHECK(std::exp(2.0 * log_gamma(Complex(0.5, 0.5)).real()) ==
        doctest::Approx(std::norm(g)).epsilon(1e-11));
}

TEST_CASE("log_gamma pole error") {
  CHECK_THROWS_AS((void)log_gamma(Complex(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS((void)log_gamma(Complex(-3.0, 0.0)), PoleError);
}

TEST_CASE("duplication identity on random right-half-plane points") {
  // log Gamma(2z) = log Gamma(z) + log Gamma(z+1/2) + (2z-1/2) ln 2 - (1/2) ln(2pi),
  // compared modulo 2 pi i.
  std::mt19937_64 rng(11);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const Complex z(uniform(0.5, 20.0), uniform(-10.0, 10.0));
    const Complex lhs = log_gamma(2.0 * z);
    const Complex rhs = log_gamma(z) + log_gamma(z + 0.5) + (2.0 * z - 0.5) * std::log(2.0) -
                        0.5 * std::log(2.0 * pi);
    const Complex diff = lhs - rhs;
    CHECK(std::abs(diff.real()) < 1e-10 * (1.0 + std::abs(lhs)));
    const double arg_defect = std::remainder(diff.imag(), 2.0 * pi);
    CHECK(std::abs(arg_defect) < 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("gamma_phase_ratio basics") {
  CHECK(gamma_phase_ratio(0.7, 0.0) == Complex(1.0, 0.0));
  for (double a : {0.05, 0.5, 1.0, 3.7})
    for (double x : {0.1, 1.0, 17.0, 300.0}) {
      const Complex r = gamma_phase_ratio(a, x);
      CHECK(std::abs(r) == 1.0);  // exact by construction
      CHECK(gamma_phase_ratio(a, -x) == std::conj(r));
    }
  // Against the direct log-gamma quotient.
  for (double a : {0.5, 1.0, 2.2})
    for (double x : {0.3, 2.0, 40.0}) {
      const Complex direct = std::exp(log_gamma(Complex(a, x)) - log_gamma(Complex(a, -x)));
      CHECK(std::abs(gamma_phase_ratio(a, x) - direct) < 1e-12);
    }
  // (1,1): phase of Gamma(1+i) cross-checked by quadrature.
  const Complex g11 = oracles::gamma_quadrature(Complex(1.0, 1.0));
  const Complex want = std::polar(1.0, 2.0 * std::arg(g11));
  CHECK(std::abs(gamma_phase_ratio(1.0, 1.0) - want) < 1e-12);
}

TEST_CASE("digamma against finite differences of log_gamma") {
  const auto lg = [](Complex z) { return log_gamma(z); };
  const double euler = 0.57721566490153286;
  CHECK(digamma(Complex(1.0, 0.0)).real() == doctest::Approx(-euler).epsilon(1e-12));
  CHECK(std::abs(digamma(Complex(1.0, 0.0)) - oracles::digamma_fd(lg, Complex(1.0, 0.0))) < 1e-9);
  // psi(1/2) = -gamma - 2 ln 2
  CHECK(digamma(Complex(0.5, 0.0)).real() ==
        doctest::Approx(-euler - 2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(digamma(Complex(0.5, 0.0)) - oracles::digamma_fd(lg, Complex(0.5, 0.0))) < 1e-9);
  for (Complex z : {Complex(0.2, 1.1), Complex(4.0, -2.0), Complex(0.9, 30.0)})
    CHECK(std::abs(digamma(z) - oracles::digamma_fd(lg, z)) < 1e-8 * (1.0 + std::abs(digamma(z))));
}

TEST_CASE("digamma recurrence") {
  const Complex z(2.5, 0.0);
  CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-12);
  const Complex w(0.3, -1.2);
  CHECK(std::abs(digamma(w + 1.0) - digamma(w) - 1.0 / w) < 1e-12);
}

TEST_CASE("unwrap basics") {
  SUBCASE("constant sequence has zero variation") {
    const std::vector<Complex> s(3, Complex(1.0, 0.0));
    CHECK(unwrap(s).variation() == 0.0);
  }
  SUBCASE("explicit spiral accumulates its full winding") {
    std::vector<Complex> s;
    const int n = int(4.0 * pi / 0.4);  // last grid angle just below 4 pi
    for (int k = 0; k <= n; ++k) s.push_back(std::polar(1.0, 0.4 * k));
    CHECK(unwrap(s).variation() == doctest::Approx(0.4 * n).epsilon(1e-12));
  }
  SUBCASE("modulated spiral matches the analytic argument") {
    std::vector<Complex> s;
    const auto theta = [](double t) { return 3.0 * t + 0.8 * std::sin(t); };
    for (double t = 0.0; t <= 10.0; t += 0.1) s.push_back(2.0 * std::polar(1.0, theta(t)));
    CHECK(unwrap(s).variation() == doctest::Approx(theta(10.0) - theta(0.0)).epsilon(1e-12));
  }
  SUBCASE("big step demands refinement") {
    const std::vector<Complex> s{Complex(1.0, 0.0), Complex(0.0, 1.0)};  // step pi/2
    CHECK_THROWS_AS((void)unwrap(s), RefinementNeeded);
  }
  SUBCASE("zero sample rejected") {
    const std::vector<Complex> s{Complex(1.0, 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS((void)unwrap(s), std::invalid_argument);
  }
}
