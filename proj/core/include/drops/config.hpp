#pragma once

#include <optional>
#include <string>

#include "drops/pulse.hpp"
#include "drops/tomography.hpp"

namespace drops {

/// Experiment description consumed by the command-line front end.
///
/// JSON schema:
///   {
///     "spin_system": { ... } | "spin_system_path": "sys.json",   (optional)
///     "target": {"builtin": "2I1zI2z"} | {"sequence": "90y(1) ..."}
///               | {"coefficients": "droplets.json"},
///     "path": "analytic" | "expectation" | "indirect",
///     "backend": "ideal" | "pulse-sim",
///     "grid": {"beta_step_deg": 15, "alpha_step_deg": 15},
///     "noise": {"sigma": 0.0, "flip_error": 0.0, "seed": 1},
///     "out_dir": "out"
///   }
struct ExperimentConfig {
  std::optional<SpinSystemParams> spin_system;

  std::string target_builtin;
  std::string target_sequence;
  std::string target_coefficients_path;

  SamplePath path = SamplePath::Indirect;
  Backend backend = Backend::Ideal;
  double beta_step_deg = 15.0;
  double alpha_step_deg = 15.0;
  NoiseModel noise;
  bool has_seed = false;
  std::string out_dir = "out";

  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);

  /// Grid steps must divide 180/360, exactly one target must be given, a
  /// seed is mandatory once noise is enabled, and flip-angle errors require
  /// the pulse-sim backend.
  void validate() const;

  TomographyGrid grid() const;
};

}  // namespace drops
