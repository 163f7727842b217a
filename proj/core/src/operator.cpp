#include "drops/operator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace drops {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix spin_half(Axis a) {
  Matrix m(2, 2);
  switch (a) {
    case Axis::None: m << 1, 0, 0, 1; break;
    case Axis::X: m << 0, 0.5, 0.5, 0; break;
    case Axis::Y: m << 0, Complex(0, -0.5), Complex(0, 0.5), 0; break;
    case Axis::Z: m << 0.5, 0, 0, -0.5; break;
  }
  return m;
}

int checked_dim(int n_spins) {
  if (n_spins < 1) throw std::invalid_argument("Operator: n_spins must be >= 1");
  return 1 << n_spins;
}

}  // namespace

Operator::Operator(int n_spins, Matrix matrix) : n_spins_(n_spins), mat_(std::move(matrix)) {
  const int dim = checked_dim(n_spins);
  if (mat_.rows() != dim || mat_.cols() != dim)
    throw std::invalid_argument("Operator: matrix dimension must equal 2^n_spins");
}

Operator Operator::zero(int n_spins) {
  const int dim = checked_dim(n_spins);
  return Operator(n_spins, Matrix::Zero(dim, dim));
}

Operator Operator::identity(int n_spins) {
  const int dim = checked_dim(n_spins);
  return Operator(n_spins, Matrix::Identity(dim, dim));
}

Operator Operator::dagger() const { return Operator(n_spins_, mat_.adjoint()); }

bool Operator::is_hermitian(double tol) const { return (mat_ - mat_.adjoint()).norm() <= tol; }

bool Operator::is_anti_hermitian(double tol) const {
  return (mat_ + mat_.adjoint()).norm() <= tol;
}

bool Operator::is_unitary(double tol) const {
  return (mat_ * mat_.adjoint() - Matrix::Identity(mat_.rows(), mat_.cols())).norm() <= tol;
}

Operator& Operator::operator+=(const Operator& rhs) {
  if (rhs.n_spins_ != n_spins_) throw std::invalid_argument("Operator: spin count mismatch");
  mat_ += rhs.mat_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  if (rhs.n_spins_ != n_spins_) throw std::invalid_argument("Operator: spin count mismatch");
  mat_ -= rhs.mat_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  mat_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.n_spins_ != b.n_spins_) throw std::invalid_argument("Operator: spin count mismatch");
  return Operator(a.n_spins_, a.mat_ * b.mat_);
}

int CartesianLabel::involved() const {
  int q = 0;
  for (Axis a : axes)
    if (a != Axis::None) ++q;
  return q;
}

CartesianLabel CartesianLabel::identity(int n_spins) {
  return CartesianLabel{std::vector<Axis>(n_spins, Axis::None)};
}

CartesianLabel CartesianLabel::single(int k, Axis a, int n_spins) {
  if (k < 1 || k > n_spins) throw std::invalid_argument("CartesianLabel: spin index out of range");
  auto label = identity(n_spins);
  label.axes[k - 1] = a;
  return label;
}

CartesianLabel CartesianLabel::of(std::initializer_list<Axis> axes) {
  return CartesianLabel{std::vector<Axis>(axes)};
}

std::string CartesianLabel::str() const {
  const int q = involved();
  std::string out;
  if (q >= 2) out += std::to_string(1 << (q - 1));
  if (q == 0) return "1";
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (axes[k] == Axis::None) continue;
    out += 'I';
    out += std::to_string(k + 1);
    out += axes[k] == Axis::X ? 'x' : axes[k] == Axis::Y ? 'y' : 'z';
  }
  return out;
}

Operator pauli_product(const CartesianLabel& label, int n_spins) {
  if (static_cast<int>(label.axes.size()) > n_spins)
    throw std::invalid_argument("pauli_product: label addresses spin index > n_spins");
  Matrix m = Matrix::Identity(1, 1);
  for (int k = 0; k < n_spins; ++k) {
    const Axis a = k < static_cast<int>(label.axes.size()) ? label.axes[k] : Axis::None;
    m = kron(m, spin_half(a));
  }
  const int q = label.involved();
  if (q >= 2) m *= std::pow(2.0, q - 1);
  return Operator(n_spins, std::move(m));
}

Complex hs_inner(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("hs_inner: dimension mismatch");
  return (lhs.matrix().adjoint() * rhs.matrix()).trace();
}

Complex expectation(const Operator& rho, const Operator& obs) {
  if (rho.dim() != obs.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  return (rho.matrix() * obs.matrix()).trace();
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator matrix_exponential(const Operator& a) {
  const auto& m = a.matrix();
  if (a.is_hermitian(1e-12)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Matrix exp_d = es.eigenvalues().array().exp().matrix().cast<Complex>().asDiagonal();
    return Operator(a.n_spins(), es.eigenvectors() * exp_d * es.eigenvectors().adjoint());
  }
  if (a.is_anti_hermitian(1e-12)) {
    // a = -i h with h Hermitian; exponentiate through h's spectrum
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(kI * m));
    Eigen::VectorXcd phases =
        (Complex(0, -1) * es.eigenvalues().cast<Complex>().array()).exp();
    return Operator(a.n_spins(), es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
  }
  return Operator(a.n_spins(), m.exp());
}

Operator total_spin(int n_spins, Axis axis) {
  Operator f = Operator::zero(n_spins);
  for (int k = 1; k <= n_spins; ++k) f += pauli_product(CartesianLabel::single(k, axis, n_spins), n_spins);
  return f;
}

Operator global_rotation(int n_spins, double alpha, double beta) {
  // F_z and F_y are sums of commuting single-spin terms, so both exponentials
  // factorize into Kronecker products of 2x2 rotations.
  Matrix rz(2, 2), ry(2, 2);
  rz << std::polar(1.0, -alpha / 2), 0, 0, std::polar(1.0, alpha / 2);
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  ry << c, -s, s, c;
  Matrix mz = Matrix::Identity(1, 1), my = Matrix::Identity(1, 1);
  for (int k = 0; k < n_spins; ++k) {
    mz = kron(mz, rz);
    my = kron(my, ry);
  }
  return Operator(n_spins, mz * my);
}

Operator conjugate(const Operator& u, const Operator& a, double tol) {
  if (u.dim() != a.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
  if (!u.is_unitary(tol)) throw std::invalid_argument("conjugate: u is not unitary");
  return Operator(a.n_spins(), u.matrix() * a.matrix() * u.matrix().adjoint());
}

}  // namespace drops
