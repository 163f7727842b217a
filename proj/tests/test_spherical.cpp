#include <doctest.h>

#include <Eigen/Geometry>

#include "drops/spherical.hpp"
#include "oracles.hpp"

using namespace drops;

namespace {

Operator cart(std::initializer_list<Axis> axes) {
  const CartesianLabel label = CartesianLabel::of(axes);
  return pauli_product(label, static_cast<int>(label.axes.size()));
}

// Inverse rotation of a direction: R = Rz(alpha) Ry(beta) acting on vectors.
std::pair<double, double> inverse_rotate_direction(double theta, double phi, double alpha,
                                                   double beta) {
  const Eigen::Vector3d v(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                          std::cos(theta));
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()) *
       Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()))
          .toRotationMatrix();
  const Eigen::Vector3d w = r.transpose() * v;
  return {std::acos(std::clamp(w.z(), -1.0, 1.0)), std::atan2(w.y(), w.x())};
}

}  // namespace

TEST_CASE("s_factor values and pole identity") {
  CHECK(s_factor(0) == doctest::Approx(0.28209479177387814).epsilon(1e-12));
  CHECK(s_factor(1) == doctest::Approx(0.4886025119029199).epsilon(1e-12));
  for (int j = 0; j <= 6; ++j)
    CHECK(std::abs(ylm(j, 0, 0.0, 0.0) - s_factor(j)) < 1e-12);
  CHECK_THROWS_AS(s_factor(-1), std::invalid_argument);
}

TEST_CASE("ylm closed forms and frozen oracle values") {
  for (double theta : {0.1, 1.0, 2.5})
    for (double phi : {0.0, 2.0}) {
      const Complex y10 = ylm(1, 0, theta, phi);
      CHECK(std::abs(y10 - std::sqrt(3.0 / (4 * oracle::pi)) * std::cos(theta)) < 1e-14);
    }

  // order != 0 vanishes at the pole
  for (int j = 1; j <= 3; ++j)
    for (int m = 1; m <= j; ++m) CHECK(std::abs(ylm(j, m, 0.0, 0.3)) < 1e-14);

  // frozen values from an independent associated-Legendre oracle
  CHECK(std::abs(ylm(2, 1, oracle::pi / 3, oracle::pi / 4) -
                 Complex(-0.23654367393939008, -0.23654367393939005)) < 1e-12);
  CHECK(std::abs(ylm(3, -2, 2.2, 1.1) - Complex(0.23136384460509887, 0.3178529842211573)) <
        1e-12);

  // sweep against the in-test recurrence oracle
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0, 1);
  for (int rep = 0; rep < 40; ++rep) {
    const int j = rep % 5;
    const int m = j == 0 ? 0 : static_cast<int>(u01(rng) * (2 * j + 1)) - j;
    const double theta = u01(rng) * oracle::pi, phi = u01(rng) * 2 * oracle::pi;
    CHECK(std::abs(ylm(j, m, theta, phi) - oracle::ylm(j, m, theta, phi)) < 1e-12);
  }

  // wrap-around consistency in phi
  CHECK(std::abs(ylm(3, 2, 1.2, 0.7 + 2 * oracle::pi) - ylm(3, 2, 1.2, 0.7)) < 1e-12);

  CHECK_THROWS_AS(ylm(1, 2, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("wigner d matrices") {
  CHECK(wigner_d_matrix(0, 0.3, 0.8, 1.9)(0, 0) == Complex(1, 0));

  const double beta = 0.7;
  CHECK(wigner_small_d(1, 0, 0, beta) == doctest::Approx(std::cos(beta)).epsilon(1e-13));

  // full d^1 against the textbook closed form
  const Eigen::Matrix3d expected = oracle::d1_matrix(beta);
  for (int mp = -1; mp <= 1; ++mp)
    for (int m = -1; m <= 1; ++m)
      CHECK(wigner_small_d(1, mp, m, beta) ==
            doctest::Approx(expected(mp + 1, m + 1)).epsilon(1e-12));

  // unitarity for random angles up to j = 3
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 2 * oracle::pi);
  for (int j = 0; j <= 3; ++j) {
    const Matrix d = wigner_d_matrix(j, u(rng), u(rng), u(rng));
    CHECK((d * d.adjoint() - Matrix::Identity(2 * j + 1, 2 * j + 1)).norm() < 1e-12);
  }
}

TEST_CASE("wigner D matches rotated tensor components and spherical harmonics") {
  // D^j_{m'm}(alpha, beta, 0) = <T_jm' | R T_jm R^-1> on any label block
  const auto& basis = LisaBasis::get(2);
  const double alpha = 1.234, beta = 0.567;
  const Operator rot = global_rotation(2, alpha, beta);
  const DropletLabel label = DropletLabel::pair(1, 2);
  for (int j : {0, 1, 2}) {
    const Matrix d = wigner_d_matrix(j, alpha, beta, 0);
    for (int mp = -j; mp <= j; ++mp)
      for (int m = -j; m <= j; ++m) {
        const Complex overlap =
            hs_inner(basis.tensor(label, j, mp), conjugate(rot, basis.tensor(label, j, m)));
        CHECK(std::abs(overlap - d(mp + j, m + j)) < 1e-12);
      }
  }

  // Y_jm(beta, alpha) = s_j conj(D^j_{m0}(alpha, beta, 0))
  for (int j = 0; j <= 3; ++j) {
    const Matrix d = wigner_d_matrix(j, alpha, beta, 0);
    for (int m = -j; m <= j; ++m)
      CHECK(std::abs(ylm(j, m, beta, alpha) - s_factor(j) * std::conj(d(m + j, j))) < 1e-12);
  }
}

TEST_CASE("angular grid weights and exactness") {
  const AngularGrid grid = AngularGrid::gauss_legendre();
  CHECK(grid.nodes.size() == 16 * 32);
  CHECK(grid.band_limit == 15);

  double total = 0;
  for (const auto& node : grid.nodes) total += node.weight;
  CHECK(std::abs(total - 4 * oracle::pi) < 1e-8);

  // exact integration of Y_jm Y_j'm'^* well beyond the ranks used here
  for (int j = 0; j <= 5; ++j)
    for (int jp = j; jp <= 5; ++jp)
      for (int m = -j; m <= j; ++m)
        for (int mp = -jp; mp <= jp; ++mp) {
          const Complex g = l2_inner([&](double t, double p) { return ylm(j, m, t, p); },
                                     [&](double t, double p) { return ylm(jp, mp, t, p); },
                                     grid);
          const Complex expected = (j == jp && m == mp) ? 1.0 : 0.0;
          CHECK(std::abs(g - expected) < 1e-12);
        }
}

TEST_CASE("l2_inner matches coefficient dot products") {
  const AngularGrid grid = AngularGrid::gauss_legendre();
  CHECK(std::abs(l2_inner([](double t, double p) { return ylm(1, 0, t, p); },
                          [](double t, double p) { return ylm(1, 0, t, p); }, grid) -
                 1.0) < 1e-10);
  CHECK(std::abs(l2_inner([](double t, double p) { return ylm(1, 0, t, p); },
                          [](double t, double p) { return ylm(1, 1, t, p); }, grid)) < 1e-10);

  std::mt19937_64 rng(27);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 5; ++rep) {
    std::map<std::pair<int, int>, Complex> h, g;
    for (int j = 0; j <= 3; ++j)
      for (int m = -j; m <= j; ++m) {
        h[{j, m}] = {gauss(rng), gauss(rng)};
        g[{j, m}] = {gauss(rng), gauss(rng)};
      }
    auto eval = [](const std::map<std::pair<int, int>, Complex>& c) {
      return [&c](double t, double p) {
        Complex acc{};
        for (const auto& [jm, w] : c) acc += w * ylm(jm.first, jm.second, t, p);
        return acc;
      };
    };
    Complex dot{};
    for (const auto& [jm, w] : h) dot += std::conj(w) * g.at(jm);
    CHECK(std::abs(l2_inner(eval(h), eval(g), grid) - dot) < 1e-9);
  }
}

TEST_CASE("evaluate_droplet examples") {
  const DropletFunction dz = decompose(cart({Axis::Z}));
  const Complex at_pole = evaluate_droplet(dz, DropletLabel::single(1), 0.0, 0.0);
  CHECK(std::abs(at_pole - s_factor(1) / std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(at_pole.real() - 0.34549414947133544) < 1e-12);

  CHECK(std::abs(evaluate_droplet(dz, DropletLabel::empty(), 1.0, 2.0)) < 1e-14);
  CHECK(std::abs(evaluate_droplet(DropletFunction(2), DropletLabel::pair(1, 2), 1.0, 2.0)) ==
        0.0);

  // droplet of I_x peaks on the +x axis; coarse grid search oracle
  const DropletFunction dx = decompose(cart({Axis::X}));
  double best = -1, best_theta = 0, best_phi = 0;
  for (int ti = 0; ti <= 60; ++ti)
    for (int pi_ = 0; pi_ < 120; ++pi_) {
      const double t = ti * oracle::pi / 60, p = pi_ * oracle::pi / 60;
      const double v = std::abs(evaluate_droplet(dx, DropletLabel::single(1), t, p));
      if (v > best) {
        best = v;
        best_theta = t;
        best_phi = p;
      }
    }
  CHECK(best_theta == doctest::Approx(oracle::pi / 2).epsilon(1e-9));
  CHECK((std::abs(best_phi) < 1e-9 || std::abs(best_phi - 2 * oracle::pi) < 1e-9));
}

TEST_CASE("rotate_function examples") {
  const DropletFunction d = decompose(cart({Axis::Z}));
  const DropletFunction same = rotate_function(d, 0, 0);
  for (const auto& [label, terms] : d.droplets())
    for (const auto& [jm, c] : terms)
      CHECK(std::abs(same.coefficient(label, jm.first, jm.second) - c) < 1e-14);

  // pole of Y_10 moves onto the +x axis under beta = pi/2
  DropletFunction y10(1);
  y10.set_coefficient(DropletLabel::single(1), 1, 0, 1.0);
  const DropletFunction moved = rotate_function(y10, 0, oracle::pi / 2);
  CHECK(std::abs(evaluate_droplet(moved, DropletLabel::single(1), oracle::pi / 2, 0.0) -
                 s_factor(1)) < 1e-12);

  // composition agrees with the composed D matrix
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0, 2 * oracle::pi);
  const double a1 = u(rng), b1 = u(rng) / 2, a2 = u(rng), b2 = u(rng) / 2;
  const Operator op(2, oracle::random_hermitian(4, rng));
  const DropletFunction base = decompose(op);
  const DropletFunction twice = rotate_function(rotate_function(base, a1, b1), a2, b2);
  // R(a2,b2) R(a1,b1) pointwise at sample angles
  for (double theta : {0.4, 1.7})
    for (double phi : {0.9, 4.0}) {
      const auto [t1, p1] = inverse_rotate_direction(theta, phi, a2, b2);
      const auto [t2, p2] = inverse_rotate_direction(t1, p1, a1, b1);
      for (const auto& label : {DropletLabel::single(1), DropletLabel::pair(1, 2)}) {
        const Complex lhs = evaluate_droplet(twice, label, theta, phi);
        const Complex rhs = evaluate_droplet(base, label, t2, p2);
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
    }
}

TEST_CASE("operator rotation and function rotation commute with decompose") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0, 2 * oracle::pi);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const Operator a(n, oracle::random_matrix(1 << n, rng));
      const double alpha = u(rng), beta = u(rng) / 2;
      const DropletFunction via_op =
          decompose(conjugate(global_rotation(n, alpha, beta), a));
      const DropletFunction via_fn = rotate_function(decompose(a), alpha, beta);
      for (const auto& [label, terms] : via_op.droplets())
        for (const auto& [jm, c] : terms)
          CHECK(std::abs(via_fn.coefficient(label, jm.first, jm.second) - c) < 1e-10);
    }
  }
}

TEST_CASE("droplet scalar products match operator scalar products per label") {
  std::mt19937_64 rng(57);
  const AngularGrid grid = AngularGrid::gauss_legendre();
  const auto& basis = LisaBasis::get(2);
  for (int rep = 0; rep < 3; ++rep) {
    const Operator a(2, oracle::random_matrix(4, rng));
    const Operator b(2, oracle::random_matrix(4, rng));
    const DropletFunction da = decompose(a), db = decompose(b);
    for (const auto& label : system_labels(2)) {
      // operator-side component scalar product <A^(l) | B^(l)>
      Complex op_side{};
      for (const auto& c : basis.components()) {
        if (c.label != label) continue;
        op_side += std::conj(hs_inner(c.op, a)) * hs_inner(c.op, b);
      }
      const Complex fn_side = l2_inner(
          [&](double t, double p) { return evaluate_droplet(da, label, t, p); },
          [&](double t, double p) { return evaluate_droplet(db, label, t, p); }, grid);
      CHECK(std::abs(op_side - fn_side) < 1e-9);
    }
  }
}
