#include "drops/pulse.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace drops {

namespace {

void check_targets(const std::vector<int>& targets, int n) {
  if (targets.empty()) throw std::invalid_argument("pulse: empty target set");
  for (int t : targets)
    if (t < 1 || t > n) throw std::invalid_argument("pulse: element references absent spin");
}

// Single-spin propagator exp(-i flip (I_x cos p + I_y sin p)).
Matrix pulse_2x2(double flip, double phase) {
  const double c = std::cos(flip / 2), s = std::sin(flip / 2);
  Matrix u(2, 2);
  u << c, Complex(0, -s) * std::polar(1.0, -phase),
       Complex(0, -s) * std::polar(1.0, phase), c;
  return u;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix pulse_propagator(const Pulse& pulse, int n) {
  check_targets(pulse.targets, n);
  const Matrix u2 = pulse_2x2(pulse.flip, pulse.phase);
  Matrix u = Matrix::Identity(1, 1);
  for (int k = 1; k <= n; ++k) {
    const bool hit = std::find(pulse.targets.begin(), pulse.targets.end(), k) !=
                     pulse.targets.end();
    u = kron(u, hit ? u2 : Matrix::Identity(2, 2));
  }
  return u;
}

// Diagonal of the weak-coupling Hamiltonian in the computational basis
// (bit 0 of a state, counted from the left, is spin 1; cleared bit = up).
Eigen::VectorXd hamiltonian_diagonal(const SpinSystemParams& params) {
  const int n = params.n;
  const int dim = 1 << n;
  Eigen::VectorXd h = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    double acc = 0;
    for (int k = 1; k <= n; ++k) {
      const double mk = ((i >> (n - k)) & 1) ? -0.5 : 0.5;
      acc += params.offsets.empty() ? 0 : params.offsets[k - 1] * mk;
      for (int l = k + 1; l <= n; ++l) {
        const double ml = ((i >> (n - l)) & 1) ? -0.5 : 0.5;
        acc += 2 * kPi * params.coupling(k, l) * mk * ml;
      }
    }
    h(i) = acc;
  }
  return h;
}

double half_pi() { return kPi / 2; }

Pulse p90(double phase, std::vector<int> targets) { return {half_pi(), phase, std::move(targets)}; }
Pulse p180(double phase, std::vector<int> targets) { return {kPi, phase, std::move(targets)}; }

constexpr double kPhaseX = 0, kPhaseY = kPi / 2, kPhaseMx = kPi, kPhaseMy = 3 * kPi / 2;

}  // namespace

SpinSystemParams SpinSystemParams::homogeneous(int n) {
  SpinSystemParams p;
  p.n = n;
  p.gamma.assign(n, 1.0);
  p.offsets.assign(n, 0.0);
  return p;
}

double SpinSystemParams::coupling(int k, int l) const {
  if (k > l) std::swap(k, l);
  auto it = couplings.find({k, l});
  return it == couplings.end() ? 0.0 : it->second;
}

void SpinSystemParams::set_coupling(int k, int l, double j_hz) {
  if (k == l) throw std::invalid_argument("SpinSystemParams: J_kk is undefined");
  if (k > l) std::swap(k, l);
  couplings[{k, l}] = j_hz;
}

void SpinSystemParams::validate() const {
  if (n < 1) throw std::invalid_argument("SpinSystemParams: n must be >= 1");
  if (!gamma.empty() && static_cast<int>(gamma.size()) != n)
    throw std::invalid_argument("SpinSystemParams: gamma size mismatch");
  if (!offsets.empty() && static_cast<int>(offsets.size()) != n)
    throw std::invalid_argument("SpinSystemParams: offsets size mismatch");
  for (const auto& [kl, j] : couplings) {
    (void)j;
    if (kl.first < 1 || kl.second > n || kl.first >= kl.second)
      throw std::invalid_argument("SpinSystemParams: coupling indices out of range");
  }
}

std::string SpinSystemParams::to_json(int indent) const {
  nlohmann::json out;
  out["n"] = n;
  out["gamma"] = gamma.empty() ? std::vector<double>(n, 1.0) : gamma;
  std::vector<double> offsets_hz(n, 0.0);
  for (int k = 0; k < n && k < static_cast<int>(offsets.size()); ++k)
    offsets_hz[k] = offsets[k] / (2 * kPi);
  out["offsets_hz"] = offsets_hz;
  out["couplings"] = nlohmann::json::array();
  for (const auto& [kl, j] : couplings)
    out["couplings"].push_back({{"k", kl.first}, {"l", kl.second}, {"j_hz", j}});
  return out.dump(indent);
}

SpinSystemParams SpinSystemParams::from_json(const std::string& text) {
  const auto in = nlohmann::json::parse(text);
  SpinSystemParams p = homogeneous(in.at("n").get<int>());
  if (in.contains("gamma")) p.gamma = in.at("gamma").get<std::vector<double>>();
  if (in.contains("offsets_hz")) {
    const auto hz = in.at("offsets_hz").get<std::vector<double>>();
    p.offsets.resize(hz.size());
    for (std::size_t k = 0; k < hz.size(); ++k) p.offsets[k] = 2 * kPi * hz[k];
  }
  if (in.contains("couplings"))
    for (const auto& c : in.at("couplings"))
      p.set_coupling(c.at("k").get<int>(), c.at("l").get<int>(), c.at("j_hz").get<double>());
  p.validate();
  return p;
}

PulseSequence& PulseSequence::append(SequenceElement e) {
  elements.push_back(std::move(e));
  return *this;
}

PulseSequence& PulseSequence::append(const PulseSequence& tail) {
  elements.insert(elements.end(), tail.elements.begin(), tail.elements.end());
  return *this;
}

PulseSequence PulseSequence::with_flip_error(double epsilon) const {
  PulseSequence out = *this;
  for (auto& e : out.elements)
    if (auto* p = std::get_if<Pulse>(&e)) p->flip *= 1.0 + epsilon;
  return out;
}

Operator thermal_state(const SpinSystemParams& params) {
  params.validate();
  Operator rho = Operator::zero(params.n);
  for (int k = 1; k <= params.n; ++k) {
    const double g = params.gamma.empty() ? 1.0 : params.gamma[k - 1];
    rho += g * pauli_product(CartesianLabel::single(k, Axis::Z, params.n), params.n);
  }
  return rho;
}

Operator apply_pulse(const Operator& rho, const Pulse& pulse) {
  const Matrix u = pulse_propagator(pulse, rho.n_spins());
  return Operator(rho.n_spins(), u * rho.matrix() * u.adjoint());
}

Operator evolve(const Operator& rho, const SpinSystemParams& params, double duration) {
  if (duration < 0) throw std::invalid_argument("evolve: duration must be >= 0");
  if (params.n != rho.n_spins()) throw std::invalid_argument("evolve: spin count mismatch");
  const Eigen::VectorXd h = hamiltonian_diagonal(params);
  Matrix out = rho.matrix();
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) *= std::polar(1.0, -duration * (h(i) - h(j)));
  return Operator(rho.n_spins(), std::move(out));
}

Operator apply_gradient(const Operator& rho) {
  const int n = rho.n_spins();
  Matrix out = rho.matrix();
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if (std::popcount(static_cast<unsigned>(i)) != std::popcount(static_cast<unsigned>(j)))
        out(i, j) = 0;
  (void)n;
  return Operator(n, std::move(out));
}

Operator run_sequence(const Operator& initial, const PulseSequence& seq,
                      const SpinSystemParams& params) {
  Operator rho = initial;
  for (const auto& element : seq.elements) {
    if (const auto* pulse = std::get_if<Pulse>(&element)) {
      check_targets(pulse->targets, rho.n_spins());
      rho = apply_pulse(rho, *pulse);
    } else if (const auto* delay = std::get_if<Delay>(&element)) {
      rho = evolve(rho, params, delay->duration);
    } else {
      rho = apply_gradient(rho);
    }
  }
  return rho;
}

Operator sequence_propagator(const PulseSequence& seq, int n_spins) {
  Matrix u = Matrix::Identity(1 << n_spins, 1 << n_spins);
  for (const auto& element : seq.elements) {
    const auto* pulse = std::get_if<Pulse>(&element);
    if (!pulse)
      throw std::invalid_argument("sequence_propagator: sequence is not pulses-only");
    u = pulse_propagator(*pulse, n_spins) * u;
  }
  return Operator(n_spins, std::move(u));
}

PulseSequence parse_sequence(const std::string& text, const SpinSystemParams& params) {
  PulseSequence seq;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "G") {
      seq.append(Gradient{});
      continue;
    }
    if (token.rfind("d(", 0) == 0 && token.back() == ')') {
      const std::string body = token.substr(2, token.size() - 3);
      const auto slash = body.find('/');
      if (slash == std::string::npos) {
        seq.append(Delay{std::stod(body)});
      } else {
        // fraction form "N/MJkl" meaning N / (M * J_kl)
        const auto jpos = body.find('J', slash);
        if (jpos == std::string::npos || body.size() != jpos + 3)
          throw std::invalid_argument("parse_sequence: bad delay token '" + token + "'");
        const double num = std::stod(body.substr(0, slash));
        const double den = std::stod(body.substr(slash + 1, jpos - slash - 1));
        const int k = body[jpos + 1] - '0', l = body[jpos + 2] - '0';
        const double j_hz = params.coupling(k, l);
        if (j_hz == 0.0)
          throw InvalidCouplings("parse_sequence: delay references zero coupling J" +
                                 std::to_string(k) + std::to_string(l));
        seq.append(Delay{num / (den * j_hz)});
      }
      continue;
    }
    // pulse token "<deg><phase>(k[,l...])"
    const auto open = token.find('(');
    if (open == std::string::npos || token.back() != ')')
      throw std::invalid_argument("parse_sequence: bad token '" + token + "'");
    std::size_t i = 0;
    while (i < open && (std::isdigit(static_cast<unsigned char>(token[i])) || token[i] == '.'))
      ++i;
    if (i == 0) throw std::invalid_argument("parse_sequence: bad token '" + token + "'");
    const double flip = std::stod(token.substr(0, i)) * kPi / 180.0;
    std::string phase_str = token.substr(i, open - i);
    double phase = 0;
    if (phase_str == "x") phase = kPhaseX;
    else if (phase_str == "y") phase = kPhaseY;
    else if (phase_str == "-x" || phase_str == "mx") phase = kPhaseMx;
    else if (phase_str == "-y" || phase_str == "my") phase = kPhaseMy;
    else throw std::invalid_argument("parse_sequence: bad phase in '" + token + "'");
    std::vector<int> targets;
    std::string body = token.substr(open + 1, token.size() - open - 2);
    std::istringstream spins(body);
    std::string field;
    while (std::getline(spins, field, ',')) targets.push_back(std::stoi(field));
    seq.append(Pulse{flip, phase, std::move(targets)});
  }
  return seq;
}

PulseSequence bilinear_preparation(Axis variant, const SpinSystemParams& params) {
  if (variant != Axis::X && variant != Axis::Y)
    throw std::invalid_argument("bilinear_preparation: variant must be X or Y");
  const double j12 = params.coupling(1, 2);
  if (j12 <= 0) throw InvalidCouplings("bilinear_preparation: requires J_12 > 0");
  const double t_a = 1.0 / (4.0 * j12);
  PulseSequence seq;
  seq.append(p90(kPhaseY, {2}));
  seq.append(Gradient{});
  seq.append(p90(variant == Axis::X ? kPhaseX : kPhaseY, {1}));
  seq.append(Delay{t_a});
  seq.append(p180(variant == Axis::X ? kPhaseY : kPhaseX, {1, 2}));
  seq.append(Delay{t_a});
  return seq;
}

PulseSequence trilinear_preparation(const SpinSystemParams& params) {
  const double j12 = params.coupling(1, 2), j13 = params.coupling(1, 3);
  if (j12 <= 0 || j13 <= 0)
    throw InvalidCouplings("trilinear_preparation: requires J_12 > 0 and J_13 > 0");
  const double t_b = 1.0 / (4.0 * j13);
  const double t_c = 1.0 / (4.0 * j13) - 1.0 / (4.0 * j12);
  const double t_d = 1.0 / (4.0 * j12);
  if (t_c < 0)
    throw InvalidCouplings("trilinear_preparation: t_c < 0, requires J_13 <= J_12");
  PulseSequence seq;
  seq.append(p90(kPhaseY, {2, 3}));
  seq.append(Gradient{});
  seq.append(p90(kPhaseY, {1}));
  seq.append(Delay{t_b});
  seq.append(p180(kPhaseY, {1, 3}));
  seq.append(Delay{t_c});
  seq.append(p180(kPhaseY, {2}));
  seq.append(Delay{t_d});
  return seq;
}

PulseSequence preparation_sequence(const std::string& target, const SpinSystemParams& params) {
  PulseSequence seq;
  auto tail = [&](std::initializer_list<Pulse> pulses) {
    for (const auto& p : pulses) seq.append(p);
    return seq;
  };

  if (target == "Iz") return seq;  // identity operation (do nothing)
  if (target == "Ix") return tail({p90(kPhaseY, {1})});
  if (target == "Iy") return tail({p90(kPhaseMx, {1})});

  if (target == "2I1xI2x") { seq = bilinear_preparation(Axis::X, params); return tail({p90(kPhaseY, {2})}); }
  if (target == "2I1yI2y") { seq = bilinear_preparation(Axis::Y, params); return tail({p90(kPhaseMx, {2})}); }
  if (target == "2I1zI2z") { seq = bilinear_preparation(Axis::X, params); return tail({p90(kPhaseMy, {1})}); }
  if (target == "2I1xI2y") { seq = bilinear_preparation(Axis::X, params); return tail({p90(kPhaseMx, {2})}); }
  if (target == "2I1yI2x") { seq = bilinear_preparation(Axis::Y, params); return tail({p90(kPhaseY, {2})}); }
  if (target == "2I1zI2x") { seq = bilinear_preparation(Axis::X, params); return tail({p90(kPhaseY, {1}), p90(kPhaseMy, {2})}); }

  if (target == "4Ixxx") { seq = trilinear_preparation(params); return tail({p90(kPhaseY, {2}), p90(kPhaseY, {3})}); }
  if (target == "4Iyyy") { seq = trilinear_preparation(params); return tail({p90(kPhaseMy, {1}), p90(kPhaseMx, {1}), p90(kPhaseMx, {2}), p90(kPhaseMx, {3})}); }
  if (target == "4Ixyy") { seq = trilinear_preparation(params); return tail({p90(kPhaseMx, {2}), p90(kPhaseMx, {3})}); }
  if (target == "4Iyxy") { seq = trilinear_preparation(params); return tail({p90(kPhaseMy, {1}), p90(kPhaseMx, {1}), p90(kPhaseY, {2}), p90(kPhaseMx, {3})}); }
  if (target == "4Iyyx") { seq = trilinear_preparation(params); return tail({p90(kPhaseMy, {1}), p90(kPhaseMx, {1}), p90(kPhaseMx, {2}), p90(kPhaseY, {3})}); }
  if (target == "4Ixxy") { seq = trilinear_preparation(params); return tail({p90(kPhaseY, {2}), p90(kPhaseMx, {3})}); }
  if (target == "4Ixyx") { seq = trilinear_preparation(params); return tail({p90(kPhaseMx, {2}), p90(kPhaseY, {3})}); }
  if (target == "4Iyxx") { seq = trilinear_preparation(params); return tail({p90(kPhaseMy, {1}), p90(kPhaseMx, {1}), p90(kPhaseY, {2}), p90(kPhaseY, {3})}); }
  if (target == "4Ixyz") { seq = trilinear_preparation(params); return tail({p90(kPhaseMx, {2})}); }

  throw std::invalid_argument("preparation_sequence: no sequence for target '" + target + "'");
}

std::vector<std::string> preparation_targets(int n_spins) {
  switch (n_spins) {
    case 1: return {"Ix", "Iy", "Iz"};
    case 2: return {"2I1xI2x", "2I1yI2y", "2I1zI2z", "2I1xI2y", "2I1yI2x", "2I1zI2x"};
    case 3:
      return {"4Ixxx", "4Iyyy", "4Ixyz", "4Ixyy", "4Iyxy", "4Iyyx", "4Ixxy", "4Ixyx", "4Iyxx"};
    default: throw Unsupported("preparation_targets: n_spins must be 1..3");
  }
}

PulseSequence detection_rotation(const CartesianLabel& c, const CartesianLabel& m) {
  if (c.axes.size() != m.axes.size())
    throw std::invalid_argument("detection_rotation: label size mismatch");
  PulseSequence seq;
  for (int s = static_cast<int>(c.axes.size()); s >= 1; --s) {
    const Axis from = c.axes[s - 1], to = m.axes[s - 1];
    if (from == to) continue;
    if (from == Axis::None || to == Axis::None)
      throw std::invalid_argument("detection_rotation: cannot rotate identity factor");
    auto push = [&](double phase) { seq.append(p90(phase, {s})); };
    if (from == Axis::Z && to == Axis::X) push(kPhaseY);
    else if (from == Axis::X && to == Axis::Z) push(kPhaseMy);
    else if (from == Axis::Y && to == Axis::Z) push(kPhaseX);
    else if (from == Axis::Z && to == Axis::Y) push(kPhaseMx);
    else if (from == Axis::X && to == Axis::Y) { push(kPhaseMy); push(kPhaseMx); }
    else { push(kPhaseX); push(kPhaseY); }  // y -> z -> x
  }
  return seq;
}

}  // namespace drops
