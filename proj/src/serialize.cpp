#include "ablev/serialize.hpp"

#include <nlohmann/json.hpp>

namespace ablev {

using nlohmann::json;

json to_json(const Matrix2c& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) rows.push_back({m(r, c).real(), m(r, c).imag()});
  return rows;
}

json to_json(const Vector2c& v) {
  return json::array({{v(0).real(), v(0).imag()}, {v(1).real(), v(1).imag()}});
}

json to_json(const Classification& c) {
  json j{{"case", c.label},
         {"predicted", {{"phi1", c.phi1}, {"phi2", c.phi2}, {"phi3", c.phi3},
                        {"bound_states", c.bound_states}}}};
  if (c.E) j["E"] = to_json(*c.E);
  if (c.ell) j["ell"] = *c.ell;
  if (c.ker_D) j["ker_D"] = to_json(*c.ker_D);
  if (c.ker_C) j["ker_C"] = to_json(*c.ker_C);
  return j;
}

json to_json(const SpectralPoint& p) {
  json j{{"z", p.z}, {"multiplicity", p.multiplicity}, {"residual", p.residual}};
  if (p.clustered) j["clustered"] = true;
  return j;
}

json to_json(const LevinsonReport& r) {
  return json{{"phi1", r.phi1},
              {"phi2", r.phi2},
              {"phi3", r.phi3},
              {"phi4", r.phi4},
              {"wind", r.wind},
              {"bound_count", r.bound_count},
              {"case", r.degenerate ? json("degenerate") : to_json(r.case_label)},
              {"max_corner_residual", r.max_corner_residual},
              {"integer_residual", r.integer_residual}};
}

json to_json(const ChernResult& r) {
  return json{{"value", r.value},
              {"method", to_string(r.method)},
              {"grid", r.grid},
              {"integer_residual", r.integer_residual}};
}

json to_json(const Trace3Result& r) {
  return json{{"value", r.value},
              {"per_edge", r.per_edge},
              {"imag_defect", r.imag_defect},
              {"grid", r.grid},
              {"orientation", "(rho, phi, loop)"}};
}

Matrix2c matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix JSON must have 4 entries");
  Matrix2c m;
  for (int k = 0; k < 4; ++k) {
    const auto& e = j.at(k);
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix entry must be [re, im]");
    m(k / 2, k % 2) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return m;
}

}  // namespace ablev
