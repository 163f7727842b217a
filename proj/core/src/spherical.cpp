#include "drops/spherical.hpp"

#include <cmath>
#include <stdexcept>

namespace drops {

namespace {

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Fully normalized associated Legendre P~_j^m(cos theta) with Condon-Shortley
// phase, so that Y_jm = P~_j^m e^{i m phi}. Standard stable recurrence: seed
// along the diagonal, one step off it, then upward in j.
double normalized_legendre(int j, int m, double theta) {
  const double x = std::cos(theta), s = std::sin(theta);
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  if (j == m) return pmm;
  double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  if (j == m + 1) return pm1;
  double p = 0;
  for (int l = m + 2; l <= j; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
    const double b =
        std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    p = a * (x * pm1 - b * pmm);
    pmm = pm1;
    pm1 = p;
  }
  return p;
}

}  // namespace

double s_factor(int j) {
  if (j < 0) throw std::invalid_argument("s_factor: j must be >= 0");
  return std::sqrt((2.0 * j + 1.0) / (4.0 * kPi));
}

Complex ylm(int j, int m, double theta, double phi) {
  if (j < 0 || std::abs(m) > j) throw std::invalid_argument("ylm: require |m| <= j");
  if (m < 0) {
    const Complex y = ylm(j, -m, theta, phi);
    return (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
  }
  return normalized_legendre(j, m, theta) * std::polar(1.0, m * phi);
}

double wigner_small_d(int j, int m_row, int m_col, double beta) {
  if (std::abs(m_row) > j || std::abs(m_col) > j)
    throw std::invalid_argument("wigner_small_d: require |m| <= j");
  const int mp = m_row, m = m_col;
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  const double pref = std::sqrt(factorial(j + mp) * factorial(j - mp) * factorial(j + m) *
                                factorial(j - m));
  double sum = 0;
  const int k_min = std::max(0, m - mp);
  const int k_max = std::min(j + m, j - mp);
  for (int k = k_min; k <= k_max; ++k) {
    const double den = factorial(j + m - k) * factorial(k) * factorial(mp - m + k) *
                       factorial(j - mp - k);
    const double sign = ((mp - m + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::pow(c, 2 * j + m - mp - 2 * k) * std::pow(s, mp - m + 2 * k) / den;
  }
  return pref * sum;
}

Matrix wigner_d_matrix(int j, double alpha, double beta, double gamma) {
  if (j < 0) throw std::invalid_argument("wigner_d_matrix: j must be >= 0");
  Matrix d(2 * j + 1, 2 * j + 1);
  for (int mp = -j; mp <= j; ++mp)
    for (int m = -j; m <= j; ++m)
      d(mp + j, m + j) = std::polar(1.0, -mp * alpha) * wigner_small_d(j, mp, m, beta) *
                         std::polar(1.0, -m * gamma);
  return d;
}

AngularGrid AngularGrid::gauss_legendre(int n_theta) {
  if (n_theta < 1) throw std::invalid_argument("AngularGrid: n_theta must be >= 1");
  // Legendre nodes by Newton iteration on P_n (cf. Numerical Recipes gauleg).
  std::vector<double> x(n_theta), w(n_theta);
  const int half = (n_theta + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n_theta + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1, p2 = 0;
      for (int l = 1; l <= n_theta; ++l) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * l - 1.0) * z * p2 - (l - 1.0) * p3) / l;
      }
      pp = n_theta * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n_theta - 1 - i] = z;
    w[i] = w[n_theta - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }

  AngularGrid grid;
  grid.band_limit = n_theta - 1;
  const int n_phi = 2 * n_theta;
  const double w_phi = 2.0 * kPi / n_phi;
  grid.nodes.reserve(n_theta * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(x[i]);
    for (int k = 0; k < n_phi; ++k)
      grid.nodes.push_back({theta, w_phi * k, w[i] * w_phi});
  }
  return grid;
}

Complex l2_inner(const SphericalFn& h, const SphericalFn& g, const AngularGrid& grid) {
  Complex acc{};
  for (const auto& node : grid.nodes)
    acc += node.weight * std::conj(h(node.theta, node.phi)) * g(node.theta, node.phi);
  return acc;
}

Complex evaluate_droplet(const DropletFunction& d, const DropletLabel& label, double theta,
                         double phi) {
  auto it = d.droplets().find(label);
  if (it == d.droplets().end()) return {};
  Complex acc{};
  for (const auto& [jm, c] : it->second) acc += c * ylm(jm.first, jm.second, theta, phi);
  return acc;
}

DropletFunction rotate_function(const DropletFunction& d, double alpha, double beta) {
  DropletFunction out(d.n_spins());
  for (const auto& [label, terms] : d.droplets()) {
    for (int j : label.ranks()) {
      bool present = false;
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(2 * j + 1);
      for (const auto& [jm, coeff] : terms) {
        if (jm.first != j) continue;
        c(jm.second + j) = coeff;
        present = true;
      }
      if (!present) continue;
      const Eigen::VectorXcd rotated = wigner_d_matrix(j, alpha, beta, 0) * c;
      for (int m = -j; m <= j; ++m) out.set_coefficient(label, j, m, rotated(m + j));
    }
  }
  return out;
}

}  // namespace drops
