#include <doctest.h>

#include <cmath>

#include "ablev/weyl.hpp"
#include "fixtures.hpp"

using namespace ablev;
using fixtures::diag2;

namespace {
const Matrix2c I2 = Matrix2c::Identity();
const Matrix2c Z2 = Matrix2c::Zero();

// Closed form for C = -I, D = I: the channels decouple and
// M_jj(z) = -1 gives z_j = -4 (pi / (2 sin(pi a) G_j^2))^{1/e_j}.
double closed_form_root(double a, bool first_channel) {
  const double g = std::tgamma(first_channel ? 1.0 - a : a);
  const double expo = first_channel ? a : 1.0 - a;
  return -4.0 * std::pow(pi / (2.0 * std::sin(pi * a) * g * g), 1.0 / expo);
}
}  // namespace

TEST_CASE("weyl_m closed forms at alpha = 1/2") {
  const Matrix2d m1 = weyl_m(Flux(0.5), -1.0);
  CHECK(m1(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(m1(1, 1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(m1(0, 1) == 0.0);
  const Matrix2d m4 = weyl_m(Flux(0.5), -4.0);
  CHECK(m4(0, 0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(m4(1, 1) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)weyl_m(Flux(0.5), 0.0), std::domain_error);
}

TEST_CASE("weyl_m entries negative and monotone in -z") {
  for (double a : {0.1, 0.3, 0.5, 0.9}) {
    double prev0 = 0.0, prev1 = 0.0;
    for (double w = -10.0; w <= 10.0; w += 0.25) {
      const Matrix2d m = weyl_m(Flux(a), -std::exp(w));
      CHECK(m(0, 0) < 0.0);
      CHECK(m(1, 1) < 0.0);
      CHECK(m(0, 0) < prev0);  // strictly decreasing in -z
      CHECK(m(1, 1) < prev1);
      prev0 = m(0, 0);
      prev1 = m(1, 1);
    }
  }
}

TEST_CASE("bound states: closed-form double root at alpha = 1/2") {
  const auto pts = bound_states({-I2, I2}, Flux(0.5));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].multiplicity == 2);
  CHECK(pts[0].z == doctest::Approx(-1.0).epsilon(1e-11));
}

TEST_CASE("bound states: split roots away from alpha = 1/2") {
  const double a = 0.3;
  const auto pts = bound_states({-I2, I2}, Flux(a));
  REQUIRE(pts.size() == 2);
  const double z1 = closed_form_root(a, true);
  const double z2 = closed_form_root(a, false);
  CHECK(pts[0].z == doctest::Approx(std::min(z1, z2)).epsilon(1e-10));
  CHECK(pts[1].z == doctest::Approx(std::max(z1, z2)).epsilon(1e-10));
  CHECK(pts[0].multiplicity == 1);
  CHECK(pts[1].multiplicity == 1);
}

TEST_CASE("bound states: empty for the special rows") {
  CHECK(bound_states({I2, Z2}, Flux(0.3)).empty());
  CHECK(bound_states({Z2, I2}, Flux(0.3)).empty());
}

TEST_CASE("multiplicity sum equals the CD* negative count") {
  for (std::uint64_t seed = 0; seed < 60; ++seed)
    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const AdmissiblePair p = random_pair(seed);
      const auto pts = bound_states(p, Flux(a));  // throws CountMismatch on failure
      int total = 0;
      for (const auto& q : pts) {
        total += q.multiplicity;
        CHECK(q.z < 0.0);
      }
      CHECK(total == negative_count_cdstar(p));
    }
}

TEST_CASE("root locations are gauge invariant") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const AdmissiblePair p = random_pair(seed);
    const Matrix2c v = fixtures::m2(Complex(0.9, 0.4), Complex(0.1, -0.2), Complex(-0.3, 0.0),
                                    Complex(1.4, 0.7));
    const AdmissiblePair q{v * p.C, v * p.D};
    const auto a = bound_states(p, Flux(0.35));
    const auto b = bound_states(q, Flux(0.35));
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].z == doctest::Approx(b[k].z).epsilon(1e-9));
      CHECK(a[k].multiplicity == b[k].multiplicity);
    }
  }
}
