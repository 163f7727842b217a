#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drops/lisa.hpp"
#include "drops/plan.hpp"
#include "drops/spherical.hpp"

namespace drops {

/// Rectangular tomography grid of polar angles beta and azimuthal angles
/// alpha (radians). The default reproduces the 15-degree experimental grid:
/// beta in {0,...,180}, alpha in {0,...,360}, i.e. 13 x 25 points.
struct TomographyGrid {
  std::vector<double> betas;
  std::vector<double> alphas;

  static TomographyGrid paper_default();
  /// Steps in degrees; they must divide 180 and 360 respectively.
  static TomographyGrid with_steps_deg(double beta_step, double alpha_step);

  std::size_t size() const { return betas.size() * alphas.size(); }
  bool approx_equal(const TomographyGrid& other, double tol = 1e-9) const;
};

enum class SamplePath { Analytic, Expectation, Indirect, Averaged };
enum class Backend { Ideal, PulseSim };

std::string to_string(SamplePath path);
SamplePath sample_path_from_string(const std::string& s);
std::string to_string(Backend backend);
Backend backend_from_string(const std::string& s);

/// Additive Gaussian noise of width sigma on every measured expectation value
/// plus a relative flip-angle miscalibration epsilon on every pulse
/// (pulse-sim backend). Draws come from a counter-based stream keyed by
/// (seed, label, j, n, beta index, alpha index, part index).
struct NoiseModel {
  double sigma = 0.0;
  double flip_error = 0.0;
  std::uint64_t seed = 0;

  bool enabled() const { return sigma != 0.0 || flip_error != 0.0; }
};

/// Grid indices identifying one sample in the noise stream.
struct SampleCoord {
  int beta_index = 0;
  int alpha_index = 0;
  int part_index = 0;
};

/// Tomography samples f_j^(l)(beta_r, alpha_r) on a grid, per (label, rank).
class SampleSet {
 public:
  using Key = std::pair<DropletLabel, int>;

  SampleSet(TomographyGrid grid, SamplePath path, std::uint64_t seed = 0, int n_spins = 0);

  const TomographyGrid& grid() const { return grid_; }
  SamplePath path() const { return path_; }
  std::uint64_t seed() const { return seed_; }
  int n_spins() const { return n_spins_; }

  std::vector<Key> keys() const;
  bool has(const DropletLabel& label, int j) const;
  Complex value(const DropletLabel& label, int j, int beta_index, int alpha_index) const;
  void set(const DropletLabel& label, int j, int beta_index, int alpha_index, Complex v);

  /// Rank-summed droplet values f^(l) = sum_j f_j^(l) over the grid.
  Matrix droplet_values(const DropletLabel& label) const;
  std::vector<DropletLabel> labels() const;

  SampleSet& accumulate(Complex weight, const SampleSet& rhs);

  void write_csv(std::ostream& out) const;
  static SampleSet read_csv(std::istream& in);

 private:
  TomographyGrid grid_;
  SamplePath path_;
  std::uint64_t seed_;
  int n_spins_;
  std::map<Key, Matrix> data_;
};

/// f_j^(l)(beta, alpha) = s_j < R_{alpha beta} T_j0^(l) | a >.
Complex sample_analytic(const Operator& a, const DropletLabel& label, int j, double beta,
                        double alpha);

/// f_j^(l)(beta, alpha) = s_j < R_{alpha beta} T_j0^(l) >_rho for Hermitian rho.
Complex sample_expectation(const Operator& rho, const DropletLabel& label, int j, double beta,
                           double alpha);

/// Indirect NMR path: rho is inversely rotated, transformed entry by entry
/// into measurable operators, and the expectation values are recombined:
/// f_j^(l) = s_j sum_n r_n <M_n>.
Complex sample_indirect(const Operator& rho, const DropletLabel& label, int j, double beta,
                        double alpha, const MeasurementPlan& plan,
                        Backend backend = Backend::Ideal, const NoiseModel& noise = {},
                        const SampleCoord& coord = {});

/// Temporal averaging: weighted sum of per-part sample sets for one
/// (label, rank); each part must be Hermitian.
SampleSet temporal_average(const std::vector<std::pair<Complex, Operator>>& parts,
                           const DropletLabel& label, int j, const TomographyGrid& grid,
                           SamplePath path, Backend backend = Backend::Ideal,
                           const NoiseModel& noise = {});

/// Full grid scan over labels, ranks and angles.
SampleSet scan(const Operator& rho, const std::vector<DropletLabel>& labels,
               const TomographyGrid& grid, SamplePath path, Backend backend = Backend::Ideal,
               const NoiseModel& noise = {});

/// Scan of a complex combination sum_i c_i rho_i via temporal averaging.
SampleSet scan_parts(const std::vector<std::pair<Complex, Operator>>& parts,
                     const std::vector<DropletLabel>& labels, const TomographyGrid& grid,
                     SamplePath path, Backend backend = Backend::Ideal,
                     const NoiseModel& noise = {});

/// Root-mean-square difference over the grid, per droplet and overall.
struct RmsReport {
  std::map<DropletLabel, double> per_label;
  double overall = 0.0;
};

RmsReport rms_error(const SampleSet& measured, const SampleSet& reference);

/// Least-squares fit of Y_jm coefficients to full-grid samples (ordinary
/// normal equations; at most 2j+1 unknowns per rank).
DropletFunction least_squares_fit(const SampleSet& samples, int n_spins);

/// Labels scanned by default for an operator: all system labels for the
/// analytic/expectation paths, the NMR-measurable ones (identity excluded)
/// for the indirect path.
std::vector<DropletLabel> default_scan_labels(int n_spins, SamplePath path);

}  // namespace drops
