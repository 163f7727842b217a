#include "drops/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace drops {

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const auto in = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  if (in.contains("spin_system"))
    cfg.spin_system = SpinSystemParams::from_json(in.at("spin_system").dump());
  else if (in.contains("spin_system_path")) {
    std::ifstream f(in.at("spin_system_path").get<std::string>());
    if (!f) throw std::invalid_argument("config: cannot open spin_system_path");
    std::stringstream ss;
    ss << f.rdbuf();
    cfg.spin_system = SpinSystemParams::from_json(ss.str());
  }

  if (in.contains("target")) {
    const auto& t = in.at("target");
    if (t.contains("builtin")) cfg.target_builtin = t.at("builtin").get<std::string>();
    if (t.contains("sequence")) cfg.target_sequence = t.at("sequence").get<std::string>();
    if (t.contains("coefficients"))
      cfg.target_coefficients_path = t.at("coefficients").get<std::string>();
  }

  if (in.contains("path")) cfg.path = sample_path_from_string(in.at("path").get<std::string>());
  if (in.contains("backend"))
    cfg.backend = backend_from_string(in.at("backend").get<std::string>());
  if (in.contains("grid")) {
    const auto& g = in.at("grid");
    if (g.contains("beta_step_deg")) cfg.beta_step_deg = g.at("beta_step_deg").get<double>();
    if (g.contains("alpha_step_deg")) cfg.alpha_step_deg = g.at("alpha_step_deg").get<double>();
  }
  if (in.contains("noise")) {
    const auto& n = in.at("noise");
    if (n.contains("sigma")) cfg.noise.sigma = n.at("sigma").get<double>();
    if (n.contains("flip_error")) cfg.noise.flip_error = n.at("flip_error").get<double>();
    if (n.contains("seed")) {
      cfg.noise.seed = n.at("seed").get<std::uint64_t>();
      cfg.has_seed = true;
    }
  }
  if (in.contains("out_dir")) cfg.out_dir = in.at("out_dir").get<std::string>();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json(ss.str());
}

void ExperimentConfig::validate() const {
  int targets = 0;
  targets += !target_builtin.empty();
  targets += !target_sequence.empty();
  targets += !target_coefficients_path.empty();
  if (targets != 1)
    throw std::invalid_argument("config: exactly one target must be specified");
  if (!target_sequence.empty() && !spin_system)
    throw std::invalid_argument("config: a sequence target requires a spin_system");

  const double nb = 180.0 / beta_step_deg, na = 360.0 / alpha_step_deg;
  if (beta_step_deg <= 0 || alpha_step_deg <= 0 ||
      std::abs(nb - std::round(nb)) > 1e-9 || std::abs(na - std::round(na)) > 1e-9)
    throw std::invalid_argument("config: grid steps must divide 180 and 360 degrees");

  if (noise.enabled() && !has_seed)
    throw std::invalid_argument("config: a seed is mandatory when noise is enabled");
  if (noise.flip_error != 0.0 && backend != Backend::PulseSim)
    throw std::invalid_argument("config: flip_error requires the pulse-sim backend");
  if (spin_system) spin_system->validate();
}

TomographyGrid ExperimentConfig::grid() const {
  return TomographyGrid::with_steps_deg(beta_step_deg, alpha_step_deg);
}

}  // namespace drops
