#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ablev/serialize.hpp"
#include "fixtures.hpp"

using namespace ablev;
using nlohmann::json;

TEST_CASE("matrix round trip keeps row-major [re, im] layout") {
  const Matrix2c m = fixtures::m2(Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8));
  const json j = to_json(m);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 4);
  CHECK(j[0][0] == 1.0);
  CHECK(j[0][1] == 2.0);
  CHECK(j[1][0] == 3.0);  // row-major: entry (0,1)
  CHECK((matrix_from_json(j) - m).norm() == 0.0);
  CHECK_THROWS_AS((void)matrix_from_json(json::array({1, 2})), std::invalid_argument);
}

TEST_CASE("classification serializes label plus auxiliary fields") {
  const auto rows = fixtures::table_rows();
  for (const auto& row : rows) {
    const Classification c = classify(row.pair, Flux(row.alpha));
    const json j = to_json(c);
    CHECK(j.at("case") == row.label);
    CHECK(j.at("predicted").at("bound_states") == row.bound_states);
    if (row.label.rfind("IV.", 0) == 0) {
      CHECK(j.contains("ell"));
      CHECK(j.contains("ker_D"));
    }
    if (row.label.rfind("II.", 0) == 0) CHECK(j.contains("E"));
  }
}

TEST_CASE("levinson report serializes the identity fields") {
  const auto [ok, rep] = levinson_check({Matrix2c::Zero(), Matrix2c::Identity()}, Flux(0.5));
  REQUIRE(ok);
  const json j = to_json(rep);
  CHECK(j.at("wind") == 0);
  CHECK(j.at("bound_count") == 0);
  CHECK(j.at("phi4") == 0.0);
  CHECK(j.at("integer_residual").get<double>() <= 1e-6);
}

TEST_CASE("serialization is deterministic") {
  const auto [ok, rep] = levinson_check(random_pair(42), Flux(0.25));
  (void)ok;
  CHECK(to_json(rep).dump() == to_json(rep).dump());
}
