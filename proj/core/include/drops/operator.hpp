#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drops/types.hpp"

namespace drops {

/// Dense complex matrix of dimension 2^n acting on n spins 1/2.
class Operator {
 public:
  Operator(int n_spins, Matrix matrix);

  static Operator zero(int n_spins);
  static Operator identity(int n_spins);

  int n_spins() const { return n_spins_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

  Operator dagger() const;
  bool is_hermitian(double tol = 1e-10) const;
  bool is_anti_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;

  /// Frobenius norm.
  double norm() const { return mat_.norm(); }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= Complex(s, 0); }
  friend Operator operator-(Operator a) { return a *= Complex(-1, 0); }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  int n_spins_;
  Matrix mat_;
};

enum class Axis : std::uint8_t { None = 0, X, Y, Z };

/// Per-spin axis assignment of a Cartesian product operator with the usual
/// 2^(q-1) prefactor, q = number of non-identity factors; e.g. 2 I_{1x} I_{2z}.
struct CartesianLabel {
  std::vector<Axis> axes;

  /// Number of spins carrying a non-identity factor.
  int involved() const;
  /// Label with identity on every spin.
  static CartesianLabel identity(int n_spins);
  /// Single-spin label I_{k a} (1-based k).
  static CartesianLabel single(int k, Axis a, int n_spins);
  /// Label from per-spin axes, e.g. {Axis::X, Axis::Z} -> 2 I_{1x} I_{2z}.
  static CartesianLabel of(std::initializer_list<Axis> axes);

  std::string str() const;  // "2I1xI2z" style
  friend bool operator==(const CartesianLabel&, const CartesianLabel&) = default;
};

/// Kronecker-product Cartesian operator for the label, identity on spins the
/// label does not address. Throws if the label addresses a spin > n_spins.
Operator pauli_product(const CartesianLabel& label, int n_spins);

/// Hilbert-Schmidt inner product tr(lhs^dagger rhs); conjugate-linear in lhs.
Complex hs_inner(const Operator& lhs, const Operator& rhs);

/// Expectation value tr(rho obs).
Complex expectation(const Operator& rho, const Operator& obs);

Operator commutator(const Operator& a, const Operator& b);

/// Matrix exponential; eigendecomposition for (anti-)Hermitian arguments,
/// scaling-and-squaring Pade otherwise.
Operator matrix_exponential(const Operator& a);

/// Total spin operator F_a = sum_k I_ka.
Operator total_spin(int n_spins, Axis axis);

/// Simultaneous rotation exp(-i alpha F_z) exp(-i beta F_y) of all spins.
Operator global_rotation(int n_spins, double alpha, double beta);

/// u a u^dagger. Checks unitarity of u to `tol`.
Operator conjugate(const Operator& u, const Operator& a, double tol = 1e-10);

}  // namespace drops
