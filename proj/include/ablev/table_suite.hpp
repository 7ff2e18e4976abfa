#pragma once

#include <string>
#include <vector>

#include "ablev/extensions.hpp"

namespace ablev {

/// One row of the case tables: a constructed pair well inside the case region
/// together with the predicted per-edge phases and bound-state count.
struct TableFixture {
  std::string label;
  AdmissiblePair pair;
  double alpha;
  double phi1, phi2, phi3;
  int bound_states;
};

/// Every row of the case tables (a/b variants included), used by the levinson
/// table suite and the acceptance tests.
const std::vector<TableFixture>& table_fixtures();

}  // namespace ablev
