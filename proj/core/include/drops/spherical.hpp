#pragma once

#include <functional>
#include <vector>

#include "drops/lisa.hpp"
#include "drops/types.hpp"

namespace drops {

/// s_j = sqrt((2j+1)/(4 pi)), the pole value Y_j0(0, phi).
double s_factor(int j);

/// Orthonormal spherical harmonic Y_jm(theta, phi), Condon-Shortley phase.
Complex ylm(int j, int m, double theta, double phi);

/// Wigner d^j_{m'm}(beta) (rows m' = -j..j, columns m = -j..j).
double wigner_small_d(int j, int m_row, int m_col, double beta);

/// Wigner D^j(alpha, beta, gamma) = e^{-i m' alpha} d^j_{m'm}(beta) e^{-i m gamma}.
Matrix wigner_d_matrix(int j, double alpha, double beta, double gamma);

/// Quadrature grid on the sphere with steradian weights.
struct AngularGrid {
  struct Node {
    double theta;
    double phi;
    double weight;
  };

  std::vector<Node> nodes;
  int band_limit;  // products Y_jm Y_j'm'^* integrate exactly for j, j' <= band_limit

  /// Gauss-Legendre in cos(theta) with n_theta nodes crossed with a uniform
  /// 2 n_theta-point trapezoid in phi; exact to band limit n_theta - 1.
  static AngularGrid gauss_legendre(int n_theta = 16);
};

using SphericalFn = std::function<Complex(double theta, double phi)>;

/// L2 scalar product <h|g> by quadrature; conjugate-linear in h.
Complex l2_inner(const SphericalFn& h, const SphericalFn& g, const AngularGrid& grid);

/// f^(l)(theta, phi) = sum_{j,m} c_jm^(l) Y_jm(theta, phi); zero if the label
/// is absent from the table.
Complex evaluate_droplet(const DropletFunction& d, const DropletLabel& label, double theta,
                         double phi);

/// Coefficients transformed by D^j(alpha, beta, 0); pointwise this equals the
/// input function evaluated at the inversely rotated angles.
DropletFunction rotate_function(const DropletFunction& d, double alpha, double beta);

}  // namespace drops
