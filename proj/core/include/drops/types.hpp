#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace drops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Requested rank is not admissible for the droplet label.
struct InvalidRank : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Measurement plan has no entry for the requested (label, rank).
struct PlanIncomplete : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coupling constants produce a negative delay in a preparation block.
struct InvalidCouplings : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Spin count outside the supported 1..3 range.
struct Unsupported : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace drops
