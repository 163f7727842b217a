#include "drops/plan.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace drops {

namespace {

constexpr Axis X = Axis::X, Y = Axis::Y, Z = Axis::Z;

struct RawEntry {
  double r;                  // weight in the minimal (q-spin) system
  std::array<Axis, 3> c;     // Cartesian pattern on the involved spins
  std::array<Axis, 3> m;     // measurable pattern
};

// Axial-tensor decompositions over normalized Cartesian product operators and
// the measurable counterparts, in the label's minimal system.
std::vector<RawEntry> raw_entries(const DropletLabel& label, int j) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const double s6 = std::sqrt(6.0), s30 = std::sqrt(30.0);
  switch (label.kind()) {
    case DropletLabel::Kind::Single:
      return {{s2, {Z}, {X}}};
    case DropletLabel::Kind::Pair:
      if (j == 0)
        return {{1 / s3, {X, X}, {X, Z}}, {1 / s3, {Y, Y}, {Y, Z}}, {1 / s3, {Z, Z}, {Y, Z}}};
      if (j == 1) return {{1 / s2, {X, Y}, {X, Z}}, {-1 / s2, {Y, X}, {Y, Z}}};
      return {{-1 / s6, {X, X}, {X, Z}}, {-1 / s6, {Y, Y}, {Y, Z}}, {2 / s6, {Z, Z}, {Y, Z}}};
    case DropletLabel::Kind::Tau:
      switch (label.p()) {
        case 1: {
          const double base = (j == 1) ? 1 / s30 : -1 / (2 * s5);
          const double last = (j == 1) ? 3 / s30 : 1 / s5;
          return {{base, {X, X, Z}, {X, Z, Z}}, {base, {X, Z, X}, {X, Z, Z}},
                  {base, {Y, Y, Z}, {Y, Z, Z}}, {base, {Y, Z, Y}, {Y, Z, Z}},
                  {base, {Z, X, X}, {X, Z, Z}}, {base, {Z, Y, Y}, {X, Z, Z}},
                  {last, {Z, Z, Z}, {X, Z, Z}}};
        }
        case 2:
          if (j == 1)
            return {{-2 / (2 * s6), {X, X, Z}, {X, Z, Z}}, {1 / (2 * s6), {X, Z, X}, {X, Z, Z}},
                    {-2 / (2 * s6), {Y, Y, Z}, {Y, Z, Z}}, {1 / (2 * s6), {Y, Z, Y}, {Y, Z, Z}},
                    {1 / (2 * s6), {Z, X, X}, {X, Z, Z}}, {1 / (2 * s6), {Z, Y, Y}, {X, Z, Z}}};
          return {{-s2 / 4, {X, Z, Y}, {X, Z, Z}}, {s2 / 4, {Y, Z, X}, {Y, Z, Z}},
                  {-s2 / 4, {Z, X, Y}, {X, Z, Z}}, {s2 / 4, {Z, Y, X}, {X, Z, Z}}};
        case 3:
          if (j == 1)
            return {{-s2 / 4, {X, Z, X}, {X, Z, Z}}, {-s2 / 4, {Y, Z, Y}, {Y, Z, Z}},
                    {s2 / 4, {Z, X, X}, {X, Z, Z}}, {s2 / 4, {Z, Y, Y}, {X, Z, Z}}};
          return {{-2 / (2 * s6), {X, Y, Z}, {X, Z, Z}}, {-1 / (2 * s6), {X, Z, Y}, {X, Z, Z}},
                  {2 / (2 * s6), {Y, X, Z}, {Y, Z, Z}}, {1 / (2 * s6), {Y, Z, X}, {Y, Z, Z}},
                  {1 / (2 * s6), {Z, X, Y}, {X, Z, Z}}, {-1 / (2 * s6), {Z, Y, X}, {X, Z, Z}}};
        case 4:
          return {{1 / (2 * s3), {X, Y, Z}, {X, Z, Z}}, {-1 / (2 * s3), {X, Z, Y}, {X, Z, Z}},
                  {-1 / (2 * s3), {Y, X, Z}, {Y, Z, Z}}, {1 / (2 * s3), {Y, Z, X}, {Y, Z, Z}},
                  {1 / (2 * s3), {Z, X, Y}, {X, Z, Z}}, {-1 / (2 * s3), {Z, Y, X}, {X, Z, Z}}};
      }
      break;
    case DropletLabel::Kind::Empty:
      break;
  }
  return {};
}

CartesianLabel place(const std::vector<int>& spins, const std::array<Axis, 3>& axes, int q,
                     int n) {
  CartesianLabel label = CartesianLabel::identity(n);
  for (int i = 0; i < q; ++i) label.axes[spins[i] - 1] = axes[i];
  return label;
}

}  // namespace

MeasurementPlan::MeasurementPlan(int n_spins) : n_spins_(n_spins) {
  for (const auto& label : system_labels(n_spins)) {
    if (label.kind() == DropletLabel::Kind::Empty) continue;  // not NMR-measurable
    const auto spins = label.involved_spins();
    const int q = label.involved_count();
    // identity factors on uninvolved spins rescale the tensor operator
    const double embed = std::pow(2.0, -0.5 * (n_spins - q));
    for (int j : label.ranks()) {
      std::vector<PlanEntry> entries;
      for (const auto& raw : raw_entries(label, j)) {
        PlanEntry e{raw.r * embed, place(spins, raw.c, q, n_spins),
                    place(spins, raw.m, q, n_spins), {}, Operator::identity(n_spins)};
        e.u_pulses = detection_rotation(e.c, e.m);
        e.u = sequence_propagator(e.u_pulses, n_spins);
        entries.push_back(std::move(e));
      }
      table_[{label, j}] = std::move(entries);
    }
  }
  validate();
}

const MeasurementPlan& MeasurementPlan::builtin(int n_spins) {
  if (n_spins < 1 || n_spins > 3) throw Unsupported("MeasurementPlan: n_spins must be 1..3");
  static std::once_flag flags[3];
  static std::unique_ptr<MeasurementPlan> cache[3];
  std::call_once(flags[n_spins - 1],
                 [&] { cache[n_spins - 1].reset(new MeasurementPlan(n_spins)); });
  return *cache[n_spins - 1];
}

bool MeasurementPlan::covers(const DropletLabel& label, int j) const {
  return table_.count({label, j}) > 0;
}

const std::vector<PlanEntry>& MeasurementPlan::entries(const DropletLabel& label, int j) const {
  auto it = table_.find({label, j});
  if (it == table_.end())
    throw PlanIncomplete("MeasurementPlan: no entries for label " + label.str() + ", rank " +
                         std::to_string(j));
  return it->second;
}

void MeasurementPlan::validate() const {
  for (const auto& [key, entries] : table_) {
    const auto& [label, j] = key;
    Operator sum = Operator::zero(n_spins_);
    for (const auto& e : entries) {
      sum += e.r * pauli_product(e.c, n_spins_);
      const Operator m = pauli_product(e.m, n_spins_);
      const Operator rotated = conjugate(e.u, pauli_product(e.c, n_spins_));
      if ((rotated - m).norm() > 1e-10)
        throw std::logic_error("MeasurementPlan: U C U^dagger != M for " + e.c.str());
    }
    const Operator axial = axial_tensor(label, j, n_spins_).op;
    if ((sum - axial).norm() > 1e-12)
      throw std::logic_error("MeasurementPlan: sum r C != T_j0 for label " + label.str());
  }
}

}  // namespace drops
