// Command-line front end: construct the tensor basis, run tomography scans,
// compare sample tables and export droplet surfaces.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "drops/config.hpp"
#include "drops/mesh.hpp"
#include "drops/states.hpp"
#include "drops/tomography.hpp"

namespace {

namespace fs = std::filesystem;
using namespace drops;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_rms(std::ostream& out, const RmsReport& report) {
  out << "label      rms\n";
  for (const auto& [label, rms] : report.per_label) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-10s %.6e\n", label.str().c_str(), rms);
    out << buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-10s %.6e\n", "overall", report.overall);
  out << buf;
}

int run_basis(int n, const std::string& json_path) {
  const auto& basis = LisaBasis::get(n);
  double max_dev = 0;
  const auto& comps = basis.components();
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t k = i; k < comps.size(); ++k) {
      const Complex g = hs_inner(comps[i].op, comps[k].op);
      max_dev = std::max(max_dev, std::abs(g - (i == k ? 1.0 : 0.0)));
    }

  std::cout << "LISA basis, " << n << " spin(s): " << comps.size() << " components\n";
  for (const auto& c : comps)
    std::cout << "  label " << c.label.str() << "  j=" << c.j << "  m=" << std::showpos << c.m
              << std::noshowpos << "\n";
  std::cout << "max orthonormality deviation: " << max_dev << "\n";
  if (max_dev > 1e-12) {
    std::cerr << "error: basis orthonormality contract violated\n";
    return kExitNumerical;
  }

  if (!json_path.empty()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : comps) {
      nlohmann::json entry;
      entry["label"] = c.label.str();
      entry["j"] = c.j;
      entry["m"] = c.m;
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index r = 0; r < c.op.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index col = 0; col < c.op.dim(); ++col)
          row.push_back({c.op.matrix()(r, col).real(), c.op.matrix()(r, col).imag()});
        rows.push_back(row);
      }
      entry["matrix"] = rows;
      out.push_back(entry);
    }
    std::ofstream f(json_path);
    f << out.dump(2) << "\n";
    std::cout << "wrote " << json_path << "\n";
  }
  return kExitOk;
}

struct TargetOps {
  Operator op;                                       // exact target operator
  std::vector<std::pair<Complex, Operator>> parts;   // averaging decomposition
};

TargetOps resolve_target(const ExperimentConfig& cfg) {
  if (!cfg.target_builtin.empty()) {
    const auto& state = builtin_state(cfg.target_builtin);
    TargetOps t{state.op, {}};
    for (const auto& [w, name] : state.parts) t.parts.emplace_back(w, builtin_state(name).op);
    return t;
  }
  if (!cfg.target_sequence.empty()) {
    const auto& params = *cfg.spin_system;
    const auto seq = parse_sequence(cfg.target_sequence, params);
    return {run_sequence(thermal_state(params), seq, params), {}};
  }
  std::ifstream f(cfg.target_coefficients_path);
  if (!f) throw std::invalid_argument("config: cannot open coefficients file");
  std::stringstream ss;
  ss << f.rdbuf();
  return {reconstruct(DropletFunction::from_json(ss.str())), {}};
}

int run_tomo(const ExperimentConfig& cfg) {
  const TargetOps target = resolve_target(cfg);
  const int n = target.op.n_spins();
  const TomographyGrid grid = cfg.grid();
  const auto labels = default_scan_labels(n, cfg.path);

  // non-Hermitian targets go through temporal averaging of Hermitian parts
  const bool average = cfg.path != SamplePath::Analytic &&
                       (!target.parts.empty() && !target.op.is_hermitian());
  SampleSet measured =
      average ? scan_parts(target.parts, labels, grid, cfg.path, cfg.backend, cfg.noise)
              : scan(target.op, labels, grid, cfg.path, cfg.backend, cfg.noise);
  SampleSet reference = scan(target.op, labels, grid, SamplePath::Analytic);

  const RmsReport report = rms_error(measured, reference);

  fs::create_directories(cfg.out_dir);
  {
    std::ofstream f(fs::path(cfg.out_dir) / "samples.csv", std::ios::binary);
    measured.write_csv(f);
  }
  {
    std::ofstream f(fs::path(cfg.out_dir) / "reference.csv", std::ios::binary);
    reference.write_csv(f);
  }
  {
    std::ofstream f(fs::path(cfg.out_dir) / "coefficients.json");
    f << decompose(target.op).to_json(2) << "\n";
  }
  {
    std::ofstream f(fs::path(cfg.out_dir) / "rms.txt");
    print_rms(f, report);
  }
  print_rms(std::cout, report);

  if (!std::isfinite(report.overall)) {
    std::cerr << "error: non-finite RMS\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run_export_mesh(const std::string& csv_path, const std::string& coeffs_path,
                    const std::string& out_dir, double beta_step, double alpha_step) {
  SampleSet samples = [&] {
    if (!csv_path.empty()) {
      std::ifstream f(csv_path);
      if (!f) throw std::invalid_argument("export-mesh: cannot open '" + csv_path + "'");
      return SampleSet::read_csv(f);
    }
    std::ifstream f(coeffs_path);
    if (!f) throw std::invalid_argument("export-mesh: cannot open '" + coeffs_path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const DropletFunction d = DropletFunction::from_json(ss.str());
    // evaluate the coefficient table on a sampling grid
    const TomographyGrid grid = TomographyGrid::with_steps_deg(beta_step, alpha_step);
    SampleSet set(grid, SamplePath::Analytic, 0, d.n_spins());
    for (const auto& [label, terms] : d.droplets()) {
      for (int j : label.ranks()) {
        DropletFunction rank_only(d.n_spins());
        bool any = false;
        for (const auto& [jm, c] : terms)
          if (jm.first == j) {
            rank_only.set_coefficient(label, j, jm.second, c);
            any = true;
          }
        if (!any) continue;
        for (std::size_t bi = 0; bi < grid.betas.size(); ++bi)
          for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai)
            set.set(label, j, bi, ai,
                    evaluate_droplet(rank_only, label, grid.betas[bi], grid.alphas[ai]));
      }
    }
    return set;
  }();

  fs::create_directories(out_dir);
  for (const auto& label : samples.labels()) {
    const SurfaceMesh mesh = droplet_mesh(samples, label);
    if (mesh.degenerate)
      std::cerr << "warning: droplet " << label.str() << " is zero; degenerate mesh\n";
    const fs::path path = fs::path(out_dir) / ("droplet_" + label.str() + ".ply");
    std::ofstream f(path, std::ios::binary);
    write_ply(f, mesh);
    std::cout << "wrote " << path.string() << " (" << mesh.vertices.size() << " vertices)\n";
  }
  return kExitOk;
}

int run_compare(const std::string& a_path, const std::string& b_path) {
  std::ifstream fa(a_path), fb(b_path);
  if (!fa) throw std::invalid_argument("compare: cannot open '" + a_path + "'");
  if (!fb) throw std::invalid_argument("compare: cannot open '" + b_path + "'");
  const SampleSet a = SampleSet::read_csv(fa);
  const SampleSet b = SampleSet::read_csv(fb);
  print_rms(std::cout, rms_error(a, b));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner tomography of multispin operators: droplet sampling, "
               "NMR-style indirect measurement and surface export"};
  app.require_subcommand(1);

  auto* basis_cmd = app.add_subcommand("basis", "Construct and check the tensor basis");
  int basis_n = 1;
  std::string basis_json;
  basis_cmd->add_option("--n", basis_n, "Number of spins (1..3)")->required();
  basis_cmd->add_option("--json", basis_json, "Write basis matrices to a JSON file");

  auto* tomo_cmd = app.add_subcommand("tomo", "Run a tomography scan");
  std::string config_path, out_dir, path_str, backend_str, grid_str;
  std::uint64_t seed = 0;
  double sigma = -1, flip_error = 0;
  bool have_flip = false;
  tomo_cmd->add_option("--config", config_path, "Experiment config JSON")->required();
  auto* seed_opt = tomo_cmd->add_option("--seed", seed, "Noise seed override");
  auto* sigma_opt = tomo_cmd->add_option("--sigma", sigma, "Gaussian noise sigma override");
  auto* flip_opt =
      tomo_cmd->add_option("--flip-error", flip_error, "Relative flip-angle error override");
  tomo_cmd->add_option("--path", path_str, "analytic|expectation|indirect");
  tomo_cmd->add_option("--backend", backend_str, "ideal|pulse-sim");
  tomo_cmd->add_option("--grid", grid_str, "betaStep,alphaStep in degrees");
  tomo_cmd->add_option("--out", out_dir, "Output directory override");

  auto* mesh_cmd = app.add_subcommand("export-mesh", "Export droplet surfaces as PLY");
  std::string mesh_csv, mesh_coeffs, mesh_out = "out";
  double mesh_beta_step = 15, mesh_alpha_step = 15;
  mesh_cmd->add_option("--in", mesh_csv, "Sample CSV file");
  mesh_cmd->add_option("--coeffs", mesh_coeffs, "Droplet coefficient JSON file");
  mesh_cmd->add_option("--out", mesh_out, "Output directory");
  mesh_cmd->add_option("--grid", grid_str, "betaStep,alphaStep for coefficient evaluation");

  auto* compare_cmd = app.add_subcommand("compare", "RMS table between two sample CSVs");
  std::string cmp_a, cmp_b;
  compare_cmd->add_option("a", cmp_a, "First CSV")->required();
  compare_cmd->add_option("b", cmp_b, "Second CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (basis_cmd->parsed()) return run_basis(basis_n, basis_json);

    if (tomo_cmd->parsed()) {
      ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
      if (*seed_opt) {
        cfg.noise.seed = seed;
        cfg.has_seed = true;
      }
      if (*sigma_opt) cfg.noise.sigma = sigma;
      if (*flip_opt) {
        cfg.noise.flip_error = flip_error;
        have_flip = true;
        (void)have_flip;
      }
      if (!path_str.empty()) cfg.path = sample_path_from_string(path_str);
      if (!backend_str.empty()) cfg.backend = backend_from_string(backend_str);
      if (!grid_str.empty()) {
        const auto comma = grid_str.find(',');
        if (comma == std::string::npos)
          throw std::invalid_argument("--grid expects betaStep,alphaStep");
        cfg.beta_step_deg = std::stod(grid_str.substr(0, comma));
        cfg.alpha_step_deg = std::stod(grid_str.substr(comma + 1));
      }
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      cfg.validate();
      return run_tomo(cfg);
    }

    if (mesh_cmd->parsed()) {
      if (mesh_csv.empty() == mesh_coeffs.empty())
        throw std::invalid_argument("export-mesh: give exactly one of --in or --coeffs");
      if (!grid_str.empty()) {
        const auto comma = grid_str.find(',');
        if (comma == std::string::npos)
          throw std::invalid_argument("--grid expects betaStep,alphaStep");
        mesh_beta_step = std::stod(grid_str.substr(0, comma));
        mesh_alpha_step = std::stod(grid_str.substr(comma + 1));
      }
      return run_export_mesh(mesh_csv, mesh_coeffs, mesh_out, mesh_beta_step, mesh_alpha_step);
    }

    if (compare_cmd->parsed()) return run_compare(cmp_a, cmp_b);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::cerr << "numerical contract violation: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
