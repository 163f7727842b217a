#include "drops/lisa.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace drops {

namespace {

// Bare product operator I_{s1,a1} I_{s2,a2} ... without the 2^(q-1) prefactor.
Operator bare_product(const std::vector<int>& spins, const std::vector<Axis>& axes, int n) {
  CartesianLabel label = CartesianLabel::identity(n);
  for (std::size_t i = 0; i < spins.size(); ++i) label.axes[spins[i] - 1] = axes[i];
  const int q = label.involved();
  Operator op = pauli_product(label, n);
  if (q >= 2) op *= std::pow(2.0, -(q - 1));
  return op;
}

struct BareTerm {
  double coeff;
  std::array<Axis, 3> axes;  // per involved spin
};

constexpr Axis X = Axis::X, Y = Axis::Y, Z = Axis::Z;

// Axial tensor operators as combinations of bare Cartesian products on the
// label's involved spins, in the minimal-system normalization.
std::vector<BareTerm> axial_terms(const DropletLabel& label, int j) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const double s6 = std::sqrt(6.0), s15 = std::sqrt(15.0), s8 = std::sqrt(8.0);
  switch (label.kind()) {
    case DropletLabel::Kind::Single:
      return {{s2, {Z}}};
    case DropletLabel::Kind::Pair:
      if (j == 0) return {{2 / s3, {X, X}}, {2 / s3, {Y, Y}}, {2 / s3, {Z, Z}}};
      if (j == 1) return {{s2, {X, Y}}, {-s2, {Y, X}}};
      return {{-2 / s6, {X, X}}, {-2 / s6, {Y, Y}}, {4 / s6, {Z, Z}}};
    case DropletLabel::Kind::Tau:
      switch (label.p()) {
        case 1:
          if (j == 1)
            return {{s8 / s15, {X, X, Z}}, {s8 / s15, {X, Z, X}}, {s8 / s15, {Z, X, X}},
                    {s8 / s15, {Y, Y, Z}}, {s8 / s15, {Y, Z, Y}}, {s8 / s15, {Z, Y, Y}},
                    {3 * s8 / s15, {Z, Z, Z}}};
          return {{-2 / s5, {X, X, Z}}, {-2 / s5, {X, Z, X}}, {-2 / s5, {Z, X, X}},
                  {-2 / s5, {Y, Y, Z}}, {-2 / s5, {Y, Z, Y}}, {-2 / s5, {Z, Y, Y}},
                  {4 / s5, {Z, Z, Z}}};
        case 2:
          if (j == 1)
            return {{-2 * s2 / s3, {X, X, Z}}, {-2 * s2 / s3, {Y, Y, Z}}, {s2 / s3, {Z, X, X}},
                    {s2 / s3, {X, Z, X}}, {s2 / s3, {Z, Y, Y}}, {s2 / s3, {Y, Z, Y}}};
          return {{s2, {Y, Z, X}}, {s2, {Z, Y, X}}, {-s2, {X, Z, Y}}, {-s2, {Z, X, Y}}};
        case 3:
          if (j == 1)
            return {{s2, {Z, X, X}}, {-s2, {X, Z, X}}, {s2, {Z, Y, Y}}, {-s2, {Y, Z, Y}}};
          return {{-2 * s2 / s3, {X, Y, Z}}, {2 * s2 / s3, {Y, X, Z}}, {s2 / s3, {Z, X, Y}},
                  {-s2 / s3, {X, Z, Y}}, {s2 / s3, {Y, Z, X}}, {-s2 / s3, {Z, Y, X}}};
        case 4:
          return {{2 / s3, {X, Y, Z}}, {-2 / s3, {X, Z, Y}}, {-2 / s3, {Y, X, Z}},
                  {2 / s3, {Y, Z, X}}, {2 / s3, {Z, X, Y}}, {-2 / s3, {Z, Y, X}}};
      }
      break;
    case DropletLabel::Kind::Empty:
      break;
  }
  return {};
}

}  // namespace

TensorComponent axial_tensor(const DropletLabel& label, int j, int n_spins) {
  if (n_spins < 1 || n_spins > 3) throw Unsupported("axial_tensor: n_spins must be 1..3");
  if (label.min_spins() > n_spins)
    throw std::invalid_argument("axial_tensor: label does not fit into the system");
  if (!label.has_rank(j))
    throw InvalidRank("axial_tensor: rank " + std::to_string(j) + " not admissible for label " +
                      label.str());

  if (label.kind() == DropletLabel::Kind::Empty) {
    Operator op = std::pow(2.0, -0.5 * n_spins) * Operator::identity(n_spins);
    return {label, 0, 0, std::move(op)};
  }

  const auto spins = label.involved_spins();
  const int q = label.involved_count();
  Operator op = Operator::zero(n_spins);
  for (const auto& term : axial_terms(label, j)) {
    std::vector<Axis> axes(term.axes.begin(), term.axes.begin() + q);
    op += term.coeff * bare_product(spins, axes, n_spins);
  }
  // Identity factors on uninvolved spins inflate the norm; rescale so the
  // component stays orthonormal in the ambient space.
  op *= std::pow(2.0, -0.5 * (n_spins - q));
  return {label, j, 0, std::move(op)};
}

std::vector<TensorComponent> ladder_generate(const TensorComponent& axial) {
  if (axial.m != 0) throw std::invalid_argument("ladder_generate: seed must have m = 0");
  const int j = axial.j;
  const int n = axial.op.n_spins();
  const Operator fx = total_spin(n, Axis::X), fy = total_spin(n, Axis::Y);
  const Operator f_plus = fx + kI * fy;
  const Operator f_minus = fx - kI * fy;

  std::vector<TensorComponent> out(2 * j + 1, axial);
  out[j] = axial;
  for (int m = 0; m < j; ++m) {
    const double norm = std::sqrt(static_cast<double>(j * (j + 1) - m * (m + 1)));
    out[j + m + 1] = {axial.label, j, m + 1, (1.0 / norm) * commutator(f_plus, out[j + m].op)};
  }
  for (int m = 0; m > -j; --m) {
    const double norm = std::sqrt(static_cast<double>(j * (j + 1) - m * (m - 1)));
    out[j + m - 1] = {axial.label, j, m - 1, (1.0 / norm) * commutator(f_minus, out[j + m].op)};
  }
  return out;
}

DropletFunction::DropletFunction(int n_spins) : n_spins_(n_spins) {
  if (n_spins < 1) throw std::invalid_argument("DropletFunction: n_spins must be >= 1");
}

Complex DropletFunction::coefficient(const DropletLabel& label, int j, int m) const {
  auto it = droplets_.find(label);
  if (it == droplets_.end()) return {};
  auto jt = it->second.find({j, m});
  return jt == it->second.end() ? Complex{} : jt->second;
}

void DropletFunction::set_coefficient(const DropletLabel& label, int j, int m, Complex c) {
  if (!label.has_rank(j)) throw InvalidRank("DropletFunction: rank not admissible for label");
  if (std::abs(m) > j) throw std::invalid_argument("DropletFunction: |m| must be <= j");
  droplets_[label][{j, m}] = c;
}

bool DropletFunction::has_label(const DropletLabel& label) const {
  return droplets_.count(label) > 0;
}

DropletFunction& DropletFunction::operator+=(const DropletFunction& rhs) {
  if (rhs.n_spins_ != n_spins_)
    throw std::invalid_argument("DropletFunction: spin count mismatch");
  for (const auto& [label, terms] : rhs.droplets_)
    for (const auto& [jm, c] : terms) droplets_[label][jm] += c;
  return *this;
}

DropletFunction& DropletFunction::operator*=(Complex s) {
  for (auto& [label, terms] : droplets_)
    for (auto& [jm, c] : terms) c *= s;
  return *this;
}

std::string DropletFunction::to_json(int indent) const {
  nlohmann::json out;
  out["n"] = n_spins_;
  out["droplets"] = nlohmann::json::array();
  for (const auto& [label, terms] : droplets_) {
    nlohmann::json d;
    d["label"] = label.str();
    d["terms"] = nlohmann::json::array();
    for (const auto& [jm, c] : terms)
      d["terms"].push_back({{"j", jm.first}, {"m", jm.second}, {"re", c.real()}, {"im", c.imag()}});
    out["droplets"].push_back(std::move(d));
  }
  return out.dump(indent);
}

DropletFunction DropletFunction::from_json(const std::string& text) {
  const auto in = nlohmann::json::parse(text);
  DropletFunction d(in.at("n").get<int>());
  for (const auto& droplet : in.at("droplets")) {
    const auto label = DropletLabel::parse(droplet.at("label").get<std::string>());
    for (const auto& term : droplet.at("terms"))
      d.set_coefficient(label, term.at("j").get<int>(), term.at("m").get<int>(),
                        {term.at("re").get<double>(), term.at("im").get<double>()});
  }
  return d;
}

LisaBasis::LisaBasis(int n_spins) : n_spins_(n_spins) {
  for (const auto& label : system_labels(n_spins))
    for (int j : label.ranks())
      for (auto& component : ladder_generate(axial_tensor(label, j, n_spins))) {
        index_[{component.label, component.j, component.m}] = components_.size();
        components_.push_back(std::move(component));
      }
}

const LisaBasis& LisaBasis::get(int n_spins) {
  if (n_spins < 1 || n_spins > 3) throw Unsupported("LisaBasis: n_spins must be 1..3");
  static std::once_flag flags[3];
  static std::unique_ptr<LisaBasis> cache[3];
  std::call_once(flags[n_spins - 1],
                 [&] { cache[n_spins - 1].reset(new LisaBasis(n_spins)); });
  return *cache[n_spins - 1];
}

const Operator& LisaBasis::tensor(const DropletLabel& label, int j, int m) const {
  auto it = index_.find({label, j, m});
  if (it == index_.end()) throw std::invalid_argument("LisaBasis: no such component");
  return components_[it->second].op;
}

DropletFunction LisaBasis::decompose(const Operator& a) const {
  if (a.n_spins() != n_spins_) throw std::invalid_argument("decompose: spin count mismatch");
  DropletFunction d(n_spins_);
  for (const auto& component : components_)
    d.set_coefficient(component.label, component.j, component.m, hs_inner(component.op, a));
  return d;
}

Operator LisaBasis::reconstruct(const DropletFunction& d) const {
  Operator a = Operator::zero(n_spins_);
  for (const auto& [label, terms] : d.droplets())
    for (const auto& [jm, c] : terms) a += c * tensor(label, jm.first, jm.second);
  return a;
}

DropletFunction decompose(const Operator& a) { return LisaBasis::get(a.n_spins()).decompose(a); }

Operator reconstruct(const DropletFunction& d) {
  return LisaBasis::get(d.n_spins()).reconstruct(d);
}

Operator spin_permutation(const Operator& a, const std::vector<int>& perm) {
  const int n = a.n_spins();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("spin_permutation: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[p - 1])
      throw std::invalid_argument("spin_permutation: not a permutation of 1..n");
    seen[p - 1] = true;
  }
  const int dim = 1 << n;
  Matrix p_mat = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int target = 0;
    for (int k = 1; k <= n; ++k) {
      const int bit = (i >> (n - k)) & 1;       // spin k occupies the k-th bit from the left
      target |= bit << (n - perm[k - 1]);
    }
    p_mat(target, i) = 1;
  }
  return Operator(n, p_mat * a.matrix() * p_mat.adjoint());
}

}  // namespace drops
