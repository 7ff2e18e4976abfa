#pragma once

#include <nlohmann/json_fwd.hpp>

#include "ablev/chern.hpp"
#include "ablev/extensions.hpp"
#include "ablev/weyl.hpp"
#include "ablev/winding.hpp"

// JSON mappings for the report types. Matrices serialize as row-major arrays
// of [re, im] pairs.

namespace ablev {

nlohmann::json to_json(const Matrix2c& m);
nlohmann::json to_json(const Vector2c& v);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const SpectralPoint& p);
nlohmann::json to_json(const LevinsonReport& r);
nlohmann::json to_json(const ChernResult& r);
nlohmann::json to_json(const Trace3Result& r);

Matrix2c matrix_from_json(const nlohmann::json& j);

}  // namespace ablev
