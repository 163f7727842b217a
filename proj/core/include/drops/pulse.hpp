#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "drops/operator.hpp"

namespace drops {

/// Parameterized spin system: relative gyromagnetic weights, resonance
/// offsets (rad/s) and scalar couplings J_kl (Hz).
struct SpinSystemParams {
  int n = 1;
  std::vector<double> gamma;    // defaults to 1 per spin
  std::vector<double> offsets;  // rad/s, defaults to 0 (on resonance)
  std::map<std::pair<int, int>, double> couplings;  // (k < l) -> J_kl in Hz

  static SpinSystemParams homogeneous(int n);
  double coupling(int k, int l) const;  // 0 if absent
  void set_coupling(int k, int l, double j_hz);
  void validate() const;

  std::string to_json(int indent = -1) const;
  static SpinSystemParams from_json(const std::string& text);
};

struct Pulse {
  double flip;               // radians
  double phase;              // radians from +x
  std::vector<int> targets;  // 1-based spin indices
};

struct Delay {
  double duration;  // seconds
};

/// Idealized pulsed-field gradient: projects onto the coherence-order-zero
/// subspace (everything commuting with F_z).
struct Gradient {};

using SequenceElement = std::variant<Pulse, Delay, Gradient>;

struct PulseSequence {
  std::vector<SequenceElement> elements;

  PulseSequence& append(SequenceElement e);
  PulseSequence& append(const PulseSequence& tail);
  /// Copy with every flip angle scaled by (1 + epsilon).
  PulseSequence with_flip_error(double epsilon) const;
};

/// Thermal equilibrium state sum_k gamma_k I_kz (traceless, high-T limit).
Operator thermal_state(const SpinSystemParams& params);

/// Conjugation by exp(-i flip sum_{k in targets} (I_kx cos(phase) + I_ky sin(phase))).
Operator apply_pulse(const Operator& rho, const Pulse& pulse);

/// Free evolution under the weak-coupling Hamiltonian
/// H = sum_k offset_k I_kz + sum_{k<l} 2 pi J_kl I_kz I_lz  (diagonal).
Operator evolve(const Operator& rho, const SpinSystemParams& params, double duration);

Operator apply_gradient(const Operator& rho);

/// Left-to-right application of the sequence.
Operator run_sequence(const Operator& initial, const PulseSequence& seq,
                      const SpinSystemParams& params);

/// Unitary realizing a pulses-only sequence (throws on delays/gradients).
Operator sequence_propagator(const PulseSequence& seq, int n_spins);

/// Text DSL: whitespace-separated tokens "90y(1)", "180-x(1,2)", "G",
/// "d(0.00125)", "d(1/4J12)"; applied left to right.
PulseSequence parse_sequence(const std::string& text, const SpinSystemParams& params);

/// P^bil block: creates 2 I_1x I_2z (variant X) or 2 I_1y I_2z (variant Y)
/// from I_1z. Delays use t_a = 1/(4 J_12).
PulseSequence bilinear_preparation(Axis variant, const SpinSystemParams& params);

/// P^tril block: creates 4 I_1x I_2z I_3z from I_1z. Delays t_b = 1/(4 J_13),
/// t_c = 1/(4 J_13) - 1/(4 J_12), t_d = 1/(4 J_12); throws InvalidCouplings
/// when t_c would be negative.
PulseSequence trilinear_preparation(const SpinSystemParams& params);

/// Preparation sequence turning the thermal state into the named Cartesian
/// product operator ("Ix", "2I1zI2z", "4Ixyz", ...).
PulseSequence preparation_sequence(const std::string& target, const SpinSystemParams& params);

/// Targets with built-in preparation sequences for an n-spin system.
std::vector<std::string> preparation_targets(int n_spins);

/// Detection rotation turning the Cartesian operator c into the measurable m
/// by one pi/2 pulse per spin whose axis differs (highest spin first).
PulseSequence detection_rotation(const CartesianLabel& c, const CartesianLabel& m);

}  // namespace drops
