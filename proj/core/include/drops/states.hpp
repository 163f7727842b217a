#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drops/operator.hpp"

namespace drops {

/// Named operator with an optional decomposition into Hermitian parts for
/// temporal-averaging measurement (weights may be complex).
struct BuiltinState {
  std::string name;
  int n_spins;
  Operator op;
  std::vector<std::pair<Complex, std::string>> parts;  // references other builtin names
};

/// Catalog: the prepared Cartesian product operators of the one-, two- and
/// three-spin experiments plus DQ_x/DQ_y, TQ_x/TQ_y and the raising-operator
/// products I1+, I1+I2+, I1+I2+I3+.
const std::vector<BuiltinState>& builtin_states();

/// Lookup by name; throws std::invalid_argument for unknown names.
const BuiltinState& builtin_state(const std::string& name);

std::vector<std::string> builtin_state_names();

}  // namespace drops
