#include <doctest.h>

#include "drops/plan.hpp"
#include "drops/pulse.hpp"
#include "oracles.hpp"

using namespace drops;

namespace {

double dist(const Operator& a, const Operator& b) { return (a.matrix() - b.matrix()).norm(); }

Operator cart(std::initializer_list<Axis> axes) {
  const CartesianLabel label = CartesianLabel::of(axes);
  return pauli_product(label, static_cast<int>(label.axes.size()));
}

SpinSystemParams two_spin_params() {
  SpinSystemParams p = SpinSystemParams::homogeneous(2);
  p.set_coupling(1, 2, 215.0);
  return p;
}

SpinSystemParams three_spin_params() {
  SpinSystemParams p = SpinSystemParams::homogeneous(3);
  p.set_coupling(1, 2, 215.0);
  p.set_coupling(1, 3, 160.0);
  p.set_coupling(2, 3, 50.0);
  return p;
}

// fraction of the state's norm lying along the normalized target, and the
// sign of the overlap
std::pair<double, double> target_overlap(const Operator& state, const Operator& target) {
  const double target_norm = target.norm();
  const Complex overlap = hs_inner(target, state) / target_norm;
  const double fraction = std::norm(overlap) / hs_inner(state, state).real();
  return {fraction, overlap.real()};
}

Operator named_target(const std::string& name) {
  if (name == "Ix") return cart({Axis::X});
  if (name == "Iy") return cart({Axis::Y});
  if (name == "Iz") return cart({Axis::Z});
  auto axis = [](char c) { return c == 'x' ? Axis::X : c == 'y' ? Axis::Y : Axis::Z; };
  if (name.size() == 8)  // "2I1aI2b"
    return cart({axis(name[3]), axis(name[7])});
  return cart({axis(name[2]), axis(name[3]), axis(name[4])});  // "4Iabc"
}

}  // namespace

TEST_CASE("thermal state") {
  SpinSystemParams one = SpinSystemParams::homogeneous(1);
  CHECK(dist(thermal_state(one), cart({Axis::Z})) < 1e-15);

  SpinSystemParams two = SpinSystemParams::homogeneous(2);
  two.gamma = {4.0, 1.0};  // 1H : 13C ratio ~ 3.98, config-supplied
  const Operator expected = 4.0 * cart({Axis::Z, Axis::None}) + cart({Axis::None, Axis::Z});
  CHECK(dist(thermal_state(two), expected) < 1e-15);

  SpinSystemParams three = SpinSystemParams::homogeneous(3);
  CHECK(dist(thermal_state(three), total_spin(3, Axis::Z)) < 1e-15);
}

TEST_CASE("apply_pulse examples") {
  const Operator iz = cart({Axis::Z}), ix = cart({Axis::X}), iy = cart({Axis::Y});
  CHECK(dist(apply_pulse(iz, {oracle::pi / 2, oracle::pi / 2, {1}}), ix) < 1e-14);
  CHECK(dist(apply_pulse(iz, {0.0, 1.234, {1}}), iz) < 1e-15);
  CHECK(dist(apply_pulse(iy, {oracle::pi, 0.0, {1}}), -iy) < 1e-14);

  // against the axis-angle rotation oracle: [beta]_phi about (cos phi, sin phi, 0)
  const double beta = 1.1, phi = 0.6;
  const Matrix u = oracle::spin_rotation(beta, std::cos(phi), std::sin(phi), 0.0);
  const Operator expected(1, u * iy.matrix() * u.adjoint());
  CHECK(dist(apply_pulse(iy, {beta, phi, {1}}), expected) < 1e-14);

  CHECK_THROWS_AS(apply_pulse(iz, Pulse{1.0, 0.0, {2}}), std::invalid_argument);
}

TEST_CASE("evolve examples") {
  const SpinSystemParams params = two_spin_params();
  const Operator i1x = cart({Axis::X, Axis::None});

  CHECK(dist(evolve(i1x, params, 0.0), i1x) < 1e-15);

  // antiphase generation: I_1x -> 2 I_1y I_2z after 1/(2J)
  const double j = params.coupling(1, 2);
  const Operator anti = evolve(i1x, params, 1.0 / (2.0 * j));
  CHECK(dist(anti, cart({Axis::Y, Axis::Z})) < 1e-12);

  // half that time gives the equal mixture from the product-operator rule
  const Operator half = evolve(i1x, params, 1.0 / (4.0 * j));
  const Operator expected =
      std::cos(oracle::pi / 4) * i1x + std::sin(oracle::pi / 4) * cart({Axis::Y, Axis::Z});
  CHECK(dist(half, expected) < 1e-12);

  // offsets only: rotation about z by offset * t
  SpinSystemParams off = SpinSystemParams::homogeneous(1);
  off.offsets = {2 * oracle::pi * 100.0};
  const double t = (oracle::pi / 2) / off.offsets[0];
  CHECK(dist(evolve(cart({Axis::X}), off, t), cart({Axis::Y})) < 1e-12);

  CHECK_THROWS_AS(evolve(i1x, params, -1.0), std::invalid_argument);
}

TEST_CASE("apply_gradient examples") {
  CHECK(apply_gradient(cart({Axis::X})).norm() < 1e-15);
  CHECK(dist(apply_gradient(cart({Axis::Z})), cart({Axis::Z})) < 1e-15);

  // 2 I_1x I_2x keeps only its zero-quantum half
  const Operator in = cart({Axis::X, Axis::X});
  const Operator expected = 0.5 * (cart({Axis::X, Axis::X}) + cart({Axis::Y, Axis::Y}));
  CHECK(dist(apply_gradient(in), expected) < 1e-14);

  // idempotent and norm-nonincreasing
  std::mt19937_64 rng(131);
  const Operator rho(2, oracle::random_hermitian(4, rng));
  const Operator once = apply_gradient(rho);
  CHECK(dist(apply_gradient(once), once) < 1e-15);
  CHECK(once.norm() <= rho.norm() + 1e-15);
}

TEST_CASE("pulses and delays preserve the norm, gradients do not increase it") {
  std::mt19937_64 rng(141);
  const SpinSystemParams params = two_spin_params();
  const Operator rho(2, oracle::random_hermitian(4, rng));
  CHECK(apply_pulse(rho, {0.8, 1.9, {1, 2}}).norm() ==
        doctest::Approx(rho.norm()).epsilon(1e-13));
  CHECK(evolve(rho, params, 1e-3).norm() == doctest::Approx(rho.norm()).epsilon(1e-13));
}

TEST_CASE("run_sequence on preparation blocks") {
  // one-spin row: [pi/2]_y on I_z gives I_x
  SpinSystemParams one = SpinSystemParams::homogeneous(1);
  const Operator ix = run_sequence(thermal_state(one), preparation_sequence("Ix", one), one);
  CHECK(dist(ix, cart({Axis::X})) < 1e-13);

  // bilinear block then [pi/2]_{-y}(I_1) gives 2 I_1z I_2z up to gamma
  SpinSystemParams two = two_spin_params();
  two.gamma = {4.0, 1.0};
  const Operator zz =
      run_sequence(thermal_state(two), preparation_sequence("2I1zI2z", two), two);
  CHECK(dist(zz, 4.0 * cart({Axis::Z, Axis::Z})) < 1e-12);

  // trilinear block leaves 4 I_1x I_2z I_3z with positive amplitude
  const SpinSystemParams three = three_spin_params();
  const Operator tril =
      run_sequence(thermal_state(three), trilinear_preparation(three), three);
  const auto [fraction, sign] = target_overlap(tril, cart({Axis::X, Axis::Z, Axis::Z}));
  CHECK(fraction > 1 - 1e-9);
  CHECK(sign > 0);

  PulseSequence bad;
  bad.append(Pulse{1.0, 0.0, {3}});
  CHECK_THROWS_AS(run_sequence(thermal_state(two), bad, two), std::invalid_argument);
}

TEST_CASE("all preparation sequences hit their targets") {
  for (int n = 1; n <= 3; ++n) {
    SpinSystemParams params =
        n == 1 ? SpinSystemParams::homogeneous(1) : n == 2 ? two_spin_params()
                                                           : three_spin_params();
    if (n > 1) params.gamma.assign(n, 1.0);
    const Operator rho_th = thermal_state(params);
    for (const auto& name : preparation_targets(n)) {
      const Operator prepared =
          run_sequence(rho_th, preparation_sequence(name, params), params);
      const auto [fraction, sign] = target_overlap(prepared, named_target(name));
      INFO("target ", name);
      CHECK(fraction > 1 - 1e-9);
      CHECK(sign > 0);
    }
  }
}

TEST_CASE("invalid couplings are rejected") {
  SpinSystemParams p = SpinSystemParams::homogeneous(3);
  p.set_coupling(1, 2, 100.0);
  p.set_coupling(1, 3, 150.0);  // J_13 > J_12 makes t_c negative
  CHECK_THROWS_AS(trilinear_preparation(p), InvalidCouplings);

  SpinSystemParams no_j = SpinSystemParams::homogeneous(2);
  CHECK_THROWS_AS(bilinear_preparation(Axis::X, no_j), InvalidCouplings);
}

TEST_CASE("detection rotations") {
  // I_kz -> I_kx is the single pulse [pi/2]_y(I_k)
  const auto single = detection_rotation(CartesianLabel::single(2, Axis::Z, 2),
                                         CartesianLabel::single(2, Axis::X, 2));
  REQUIRE(single.elements.size() == 1);
  const auto& p = std::get<Pulse>(single.elements[0]);
  CHECK(p.flip == doctest::Approx(oracle::pi / 2));
  CHECK(p.phase == doctest::Approx(oracle::pi / 2));
  CHECK(p.targets == std::vector<int>{2});

  // 4 I_zxy -> 4 I_xzz uses [pi/2]_x(I_3), [pi/2]_{-y}(I_2), [pi/2]_y(I_1)
  const CartesianLabel c = CartesianLabel::of({Axis::Z, Axis::X, Axis::Y});
  const CartesianLabel m = CartesianLabel::of({Axis::X, Axis::Z, Axis::Z});
  const auto seq = detection_rotation(c, m);
  REQUIRE(seq.elements.size() == 3);
  const auto& p3 = std::get<Pulse>(seq.elements[0]);
  const auto& p2 = std::get<Pulse>(seq.elements[1]);
  const auto& p1 = std::get<Pulse>(seq.elements[2]);
  CHECK(p3.targets == std::vector<int>{3});
  CHECK(p3.phase == doctest::Approx(0.0));                    // x
  CHECK(p2.targets == std::vector<int>{2});
  CHECK(p2.phase == doctest::Approx(3 * oracle::pi / 2));     // -y
  CHECK(p1.targets == std::vector<int>{1});
  CHECK(p1.phase == doctest::Approx(oracle::pi / 2));         // y

  const Operator u = sequence_propagator(seq, 3);
  CHECK(dist(conjugate(u, pauli_product(c, 3)), pauli_product(m, 3)) < 1e-13);
}

TEST_CASE("sequence DSL") {
  const SpinSystemParams params = two_spin_params();
  const PulseSequence seq = parse_sequence("90y(1) d(1/4J12) 180x(1,2) G d(0.00125)", params);
  REQUIRE(seq.elements.size() == 5);

  const auto& pulse = std::get<Pulse>(seq.elements[0]);
  CHECK(pulse.flip == doctest::Approx(oracle::pi / 2));
  CHECK(pulse.phase == doctest::Approx(oracle::pi / 2));

  CHECK(std::get<Delay>(seq.elements[1]).duration ==
        doctest::Approx(1.0 / (4 * 215.0)).epsilon(1e-12));
  CHECK(std::get<Pulse>(seq.elements[2]).targets == std::vector<int>{1, 2});
  CHECK(std::holds_alternative<Gradient>(seq.elements[3]));
  CHECK(std::get<Delay>(seq.elements[4]).duration == doctest::Approx(0.00125));

  // the parsed bilinear block acts like the built-in one
  const PulseSequence text_bil =
      parse_sequence("90y(2) G 90x(1) d(1/4J12) 180y(1,2) d(1/4J12)", params);
  const Operator via_text = run_sequence(thermal_state(params), text_bil, params);
  const Operator via_builtin =
      run_sequence(thermal_state(params), bilinear_preparation(Axis::X, params), params);
  CHECK(dist(via_text, via_builtin) < 1e-13);

  CHECK_THROWS_AS(parse_sequence("90q(1)", params), std::invalid_argument);
  CHECK_THROWS_AS(parse_sequence("garbage", params), std::invalid_argument);
  CHECK_THROWS_AS(parse_sequence("d(1/4J13)", params), InvalidCouplings);
}

TEST_CASE("flip-angle scaling") {
  const PulseSequence seq = parse_sequence("90y(1) 180x(1)", SpinSystemParams::homogeneous(1));
  const PulseSequence scaled = seq.with_flip_error(0.02);
  CHECK(std::get<Pulse>(scaled.elements[0]).flip ==
        doctest::Approx(1.02 * oracle::pi / 2).epsilon(1e-12));
  CHECK(std::get<Pulse>(scaled.elements[1]).flip ==
        doctest::Approx(1.02 * oracle::pi).epsilon(1e-12));
}

TEST_CASE("spin system JSON round trip") {
  SpinSystemParams p = three_spin_params();
  p.gamma = {4.0, 1.0, 0.94};
  p.offsets = {2 * oracle::pi * 10, 0, -2 * oracle::pi * 5};
  const SpinSystemParams q = SpinSystemParams::from_json(p.to_json());
  CHECK(q.n == 3);
  CHECK(q.gamma == p.gamma);
  REQUIRE(q.offsets.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(q.offsets[k] == doctest::Approx(p.offsets[k]).epsilon(1e-12));
  CHECK(q.coupling(1, 2) == doctest::Approx(215.0));
  CHECK(q.coupling(3, 2) == doctest::Approx(50.0));

  CHECK_THROWS_AS(SpinSystemParams::from_json("{\"n\": 2, \"gamma\": [1]}"),
                  std::invalid_argument);
}
