#include "drops/states.hpp"

#include <stdexcept>

namespace drops {

namespace {

constexpr Axis X = Axis::X, Y = Axis::Y, Z = Axis::Z;

Operator cart(std::initializer_list<Axis> axes) {
  const CartesianLabel label = CartesianLabel::of(axes);
  return pauli_product(label, static_cast<int>(label.axes.size()));
}

std::vector<BuiltinState> make_catalog() {
  std::vector<BuiltinState> out;
  auto add = [&](std::string name, Operator op,
                 std::vector<std::pair<Complex, std::string>> parts = {}) {
    out.push_back({std::move(name), op.n_spins(), std::move(op), std::move(parts)});
  };

  add("Ix", cart({X}));
  add("Iy", cart({Y}));
  add("Iz", cart({Z}));

  add("2I1xI2x", cart({X, X}));
  add("2I1yI2y", cart({Y, Y}));
  add("2I1zI2z", cart({Z, Z}));
  add("2I1xI2y", cart({X, Y}));
  add("2I1yI2x", cart({Y, X}));
  add("2I1zI2x", cart({Z, X}));

  add("4Ixxx", cart({X, X, X}));
  add("4Iyyy", cart({Y, Y, Y}));
  add("4Ixyz", cart({X, Y, Z}));
  add("4Ixyy", cart({X, Y, Y}));
  add("4Iyxy", cart({Y, X, Y}));
  add("4Iyyx", cart({Y, Y, X}));
  add("4Ixxy", cart({X, X, Y}));
  add("4Ixyx", cart({X, Y, X}));
  add("4Iyxx", cart({Y, X, X}));

  // DQ_x = I_1x I_2x - I_1y I_2y, DQ_y = I_1x I_2y + I_1y I_2x
  add("DQx", 0.5 * (cart({X, X}) - cart({Y, Y})), {{0.5, "2I1xI2x"}, {-0.5, "2I1yI2y"}});
  add("DQy", 0.5 * (cart({X, Y}) + cart({Y, X})), {{0.5, "2I1xI2y"}, {0.5, "2I1yI2x"}});

  // TQ_x = I_xxx - I_xyy - I_yxy - I_yyx, TQ_y = I_yxx + I_xyx + I_xxy - I_yyy
  add("TQx", 0.25 * (cart({X, X, X}) - cart({X, Y, Y}) - cart({Y, X, Y}) - cart({Y, Y, X})),
      {{0.25, "4Ixxx"}, {-0.25, "4Ixyy"}, {-0.25, "4Iyxy"}, {-0.25, "4Iyyx"}});
  add("TQy", 0.25 * (cart({Y, X, X}) + cart({X, Y, X}) + cart({X, X, Y}) - cart({Y, Y, Y})),
      {{0.25, "4Iyxx"}, {0.25, "4Ixyx"}, {0.25, "4Ixxy"}, {-0.25, "4Iyyy"}});

  // raising-operator products: one, two and three rainbows
  add("I1+", cart({X}) + kI * cart({Y}), {{1.0, "Ix"}, {kI, "Iy"}});
  add("I1+I2+", 0.5 * (cart({X, X}) - cart({Y, Y})) + kI * 0.5 * (cart({X, Y}) + cart({Y, X})),
      {{1.0, "DQx"}, {kI, "DQy"}});
  add("I1+I2+I3+",
      0.25 * (cart({X, X, X}) - cart({X, Y, Y}) - cart({Y, X, Y}) - cart({Y, Y, X})) +
          kI * 0.25 *
              (cart({Y, X, X}) + cart({X, Y, X}) + cart({X, X, Y}) - cart({Y, Y, Y})),
      {{1.0, "TQx"}, {kI, "TQy"}});

  return out;
}

}  // namespace

const std::vector<BuiltinState>& builtin_states() {
  static const std::vector<BuiltinState> catalog = make_catalog();
  return catalog;
}

const BuiltinState& builtin_state(const std::string& name) {
  for (const auto& state : builtin_states())
    if (state.name == name) return state;
  throw std::invalid_argument("builtin_state: unknown state '" + name + "'");
}

std::vector<std::string> builtin_state_names() {
  std::vector<std::string> names;
  for (const auto& state : builtin_states()) names.push_back(state.name);
  return names;
}

}  // namespace drops
