#pragma once

#include <compare>
#include <string>
#include <vector>

namespace drops {

/// Droplet label: identity part (empty), linear {k}, bilinear {kl}, or one of
/// the trilinear permutation-symmetry sectors tau_1..tau_4 on spins {1,2,3}.
class DropletLabel {
 public:
  enum class Kind { Empty, Single, Pair, Tau };

  static DropletLabel empty();
  static DropletLabel single(int k);
  static DropletLabel pair(int k, int l);  // stored with k < l
  static DropletLabel tau(int p);          // p in 1..4

  Kind kind() const { return kind_; }
  int k() const { return a_; }
  int l() const { return b_; }
  int p() const { return a_; }

  std::vector<int> involved_spins() const;
  /// Number of involved spins q: 0, 1, 2 or 3.
  int involved_count() const;
  /// Smallest system hosting the label (1 for empty).
  int min_spins() const;
  /// Admissible ranks for the label.
  std::vector<int> ranks() const;
  bool has_rank(int j) const;

  std::string str() const;  // "empty", "1", "12", "tau1", ...
  static DropletLabel parse(const std::string& s);

  friend auto operator<=>(const DropletLabel&, const DropletLabel&) = default;

 private:
  DropletLabel(Kind kind, int a, int b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  int a_;
  int b_;
};

/// All droplet labels of an n-spin system, in scan order.
std::vector<DropletLabel> system_labels(int n_spins);

}  // namespace drops
