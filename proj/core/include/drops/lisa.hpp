#pragma once

#include <map>
#include <utility>
#include <vector>

#include "drops/label.hpp"
#include "drops/operator.hpp"

namespace drops {

/// One element T_{jm}^(l) of the LISA tensor-operator basis.
struct TensorComponent {
  DropletLabel label;
  int j;
  int m;
  Operator op;
};

/// Axial (m = 0) tensor operator T_{j0}^(l) embedded in an n-spin system and
/// normalized so that the full basis is orthonormal under hs_inner.
/// Throws InvalidRank if j is not admissible for the label.
TensorComponent axial_tensor(const DropletLabel& label, int j, int n_spins);

/// All orders m = -j..j from an axial seed via commutators with F_+/-,
/// T_{j,m+1} = [F_+, T_{jm}] / sqrt(j(j+1) - m(m+1)) and the mirrored descent.
std::vector<TensorComponent> ladder_generate(const TensorComponent& axial);

/// Coefficient table {(l, j, m) -> c_jm^(l)} of a droplet expansion.
class DropletFunction {
 public:
  using TermMap = std::map<std::pair<int, int>, Complex>;  // (j, m) -> c

  explicit DropletFunction(int n_spins);

  int n_spins() const { return n_spins_; }
  Complex coefficient(const DropletLabel& label, int j, int m) const;
  void set_coefficient(const DropletLabel& label, int j, int m, Complex c);
  bool has_label(const DropletLabel& label) const;
  const std::map<DropletLabel, TermMap>& droplets() const { return droplets_; }

  DropletFunction& operator+=(const DropletFunction& rhs);
  DropletFunction& operator*=(Complex s);

  std::string to_json(int indent = -1) const;
  static DropletFunction from_json(const std::string& text);

 private:
  int n_spins_;
  std::map<DropletLabel, TermMap> droplets_;
};

/// Complete orthonormal LISA basis of an n-spin system (n = 1..3).
/// Construction is deterministic; instances are cached and immutable.
class LisaBasis {
 public:
  static const LisaBasis& get(int n_spins);

  int n_spins() const { return n_spins_; }
  const std::vector<TensorComponent>& components() const { return components_; }
  const Operator& tensor(const DropletLabel& label, int j, int m) const;

  /// c_jm^(l) = hs_inner(T_jm^(l), a) for every basis component.
  DropletFunction decompose(const Operator& a) const;
  /// Linear inverse of decompose on the supported labels.
  Operator reconstruct(const DropletFunction& d) const;

 private:
  explicit LisaBasis(int n_spins);

  int n_spins_;
  std::vector<TensorComponent> components_;
  std::map<std::tuple<DropletLabel, int, int>, std::size_t> index_;
};

DropletFunction decompose(const Operator& a);
Operator reconstruct(const DropletFunction& d);

/// Conjugation by the qubit-permutation unitary sending spin k to perm[k-1].
Operator spin_permutation(const Operator& a, const std::vector<int>& perm);

}  // namespace drops
