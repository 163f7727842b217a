#pragma once

#include <map>
#include <vector>

#include "drops/label.hpp"
#include "drops/lisa.hpp"
#include "drops/pulse.hpp"

namespace drops {

/// One summand of the axial-tensor decomposition T_j0 = sum_n r_n C_n with
/// the rotation turning C_n into the directly measurable M_n.
struct PlanEntry {
  double r;                // real weight
  CartesianLabel c;        // prepared Cartesian product operator
  CartesianLabel m;        // NMR-measurable operator (single transverse factor)
  PulseSequence u_pulses;  // rotation with U C U^dagger = M
  Operator u;              // unitary realizing u_pulses
};

/// Built-in measurement table for every (label, rank) of an n-spin system
/// except the identity label, validated on construction:
///   sum_n r_n C_n = T_j0^(l)   (1e-12)
///   U_n C_n U_n^dagger = M_n   (1e-10)
class MeasurementPlan {
 public:
  static const MeasurementPlan& builtin(int n_spins);

  int n_spins() const { return n_spins_; }
  bool covers(const DropletLabel& label, int j) const;
  const std::vector<PlanEntry>& entries(const DropletLabel& label, int j) const;
  const std::map<std::pair<DropletLabel, int>, std::vector<PlanEntry>>& table() const {
    return table_;
  }

  /// Re-checks both invariants; throws std::logic_error on breach.
  void validate() const;

 private:
  explicit MeasurementPlan(int n_spins);

  int n_spins_;
  std::map<std::pair<DropletLabel, int>, std::vector<PlanEntry>> table_;
};

}  // namespace drops
