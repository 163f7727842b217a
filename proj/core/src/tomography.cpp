#include "drops/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "drops/rng.hpp"

namespace drops {

namespace {

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

std::uint64_t label_key(const DropletLabel& label) {
  switch (label.kind()) {
    case DropletLabel::Kind::Empty: return 0;
    case DropletLabel::Kind::Single: return 100 + label.k();
    case DropletLabel::Kind::Pair: return 200 + 10 * label.k() + label.l();
    case DropletLabel::Kind::Tau: return 300 + label.p();
  }
  return 0;
}

const Operator& axial(const DropletLabel& label, int j, int n) {
  if (!label.has_rank(j))
    throw InvalidRank("sample: rank " + std::to_string(j) + " not admissible for label " +
                      label.str());
  return LisaBasis::get(n).tensor(label, j, 0);
}

std::vector<int> all_spins(int n) {
  std::vector<int> spins(n);
  for (int k = 0; k < n; ++k) spins[k] = k + 1;
  return spins;
}

void format_complex(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

TomographyGrid TomographyGrid::paper_default() { return with_steps_deg(15.0, 15.0); }

TomographyGrid TomographyGrid::with_steps_deg(double beta_step, double alpha_step) {
  if (beta_step <= 0 || alpha_step <= 0)
    throw std::invalid_argument("TomographyGrid: steps must be positive");
  const double nb = 180.0 / beta_step, na = 360.0 / alpha_step;
  if (std::abs(nb - std::round(nb)) > 1e-9 || std::abs(na - std::round(na)) > 1e-9)
    throw std::invalid_argument("TomographyGrid: steps must divide 180 and 360 degrees");
  TomographyGrid grid;
  for (int i = 0; i <= static_cast<int>(std::round(nb)); ++i)
    grid.betas.push_back(deg2rad(i * beta_step));
  for (int i = 0; i <= static_cast<int>(std::round(na)); ++i)
    grid.alphas.push_back(deg2rad(i * alpha_step));
  return grid;
}

bool TomographyGrid::approx_equal(const TomographyGrid& other, double tol) const {
  if (betas.size() != other.betas.size() || alphas.size() != other.alphas.size()) return false;
  for (std::size_t i = 0; i < betas.size(); ++i)
    if (std::abs(betas[i] - other.betas[i]) > tol) return false;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (std::abs(alphas[i] - other.alphas[i]) > tol) return false;
  return true;
}

std::string to_string(SamplePath path) {
  switch (path) {
    case SamplePath::Analytic: return "analytic";
    case SamplePath::Expectation: return "expectation";
    case SamplePath::Indirect: return "indirect";
    case SamplePath::Averaged: return "averaged";
  }
  return {};
}

SamplePath sample_path_from_string(const std::string& s) {
  if (s == "analytic") return SamplePath::Analytic;
  if (s == "expectation") return SamplePath::Expectation;
  if (s == "indirect") return SamplePath::Indirect;
  if (s == "averaged") return SamplePath::Averaged;
  throw std::invalid_argument("unknown sampling path '" + s + "'");
}

std::string to_string(Backend backend) {
  return backend == Backend::Ideal ? "ideal" : "pulse-sim";
}

Backend backend_from_string(const std::string& s) {
  if (s == "ideal") return Backend::Ideal;
  if (s == "pulse-sim") return Backend::PulseSim;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

SampleSet::SampleSet(TomographyGrid grid, SamplePath path, std::uint64_t seed, int n_spins)
    : grid_(std::move(grid)), path_(path), seed_(seed), n_spins_(n_spins) {}

std::vector<SampleSet::Key> SampleSet::keys() const {
  std::vector<Key> out;
  for (const auto& [key, values] : data_) {
    (void)values;
    out.push_back(key);
  }
  return out;
}

bool SampleSet::has(const DropletLabel& label, int j) const {
  return data_.count({label, j}) > 0;
}

Complex SampleSet::value(const DropletLabel& label, int j, int beta_index,
                         int alpha_index) const {
  auto it = data_.find({label, j});
  if (it == data_.end()) throw std::invalid_argument("SampleSet: no such (label, rank)");
  return it->second(beta_index, alpha_index);
}

void SampleSet::set(const DropletLabel& label, int j, int beta_index, int alpha_index,
                    Complex v) {
  auto it = data_.find({label, j});
  if (it == data_.end()) {
    it = data_
             .emplace(Key{label, j},
                      Matrix::Zero(static_cast<Eigen::Index>(grid_.betas.size()),
                                   static_cast<Eigen::Index>(grid_.alphas.size())))
             .first;
  }
  it->second(beta_index, alpha_index) = v;
}

Matrix SampleSet::droplet_values(const DropletLabel& label) const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(grid_.betas.size()),
                            static_cast<Eigen::Index>(grid_.alphas.size()));
  bool found = false;
  for (const auto& [key, values] : data_) {
    if (key.first != label) continue;
    out += values;
    found = true;
  }
  if (!found) throw std::invalid_argument("SampleSet: no samples for label " + label.str());
  return out;
}

std::vector<DropletLabel> SampleSet::labels() const {
  std::vector<DropletLabel> out;
  for (const auto& [key, values] : data_) {
    (void)values;
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

SampleSet& SampleSet::accumulate(Complex weight, const SampleSet& rhs) {
  if (!grid_.approx_equal(rhs.grid_))
    throw std::invalid_argument("SampleSet: grid mismatch in accumulate");
  for (const auto& [key, values] : rhs.data_) {
    auto it = data_.find(key);
    if (it == data_.end())
      data_.emplace(key, (weight * values).eval());
    else
      it->second += weight * values;
  }
  return *this;
}

void SampleSet::write_csv(std::ostream& out) const {
  std::string buf = "label,j,beta_deg,alpha_deg,re,im,path,seed\n";
  char num[40];
  for (const auto& [key, values] : data_) {
    for (std::size_t bi = 0; bi < grid_.betas.size(); ++bi) {
      for (std::size_t ai = 0; ai < grid_.alphas.size(); ++ai) {
        buf += key.first.str();
        buf += ',';
        buf += std::to_string(key.second);
        buf += ',';
        std::snprintf(num, sizeof(num), "%.6f", rad2deg(grid_.betas[bi]));
        buf += num;
        buf += ',';
        std::snprintf(num, sizeof(num), "%.6f", rad2deg(grid_.alphas[ai]));
        buf += num;
        buf += ',';
        format_complex(buf, values(bi, ai).real());
        buf += ',';
        format_complex(buf, values(bi, ai).imag());
        buf += ',';
        buf += to_string(path_);
        buf += ',';
        buf += std::to_string(seed_);
        buf += '\n';
      }
    }
  }
  out << buf;
}

SampleSet SampleSet::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("SampleSet: empty CSV");
  struct Row {
    DropletLabel label = DropletLabel::empty();
    int j;
    double beta, alpha;
    Complex v;
  };
  std::vector<Row> rows;
  SamplePath path = SamplePath::Analytic;
  std::uint64_t seed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    Row row;
    std::getline(ls, field, ',');
    row.label = DropletLabel::parse(field);
    std::getline(ls, field, ',');
    row.j = std::stoi(field);
    std::getline(ls, field, ',');
    row.beta = deg2rad(std::stod(field));
    std::getline(ls, field, ',');
    row.alpha = deg2rad(std::stod(field));
    std::getline(ls, field, ',');
    const double re = std::stod(field);
    std::getline(ls, field, ',');
    row.v = {re, std::stod(field)};
    std::getline(ls, field, ',');
    path = sample_path_from_string(field);
    std::getline(ls, field, ',');
    seed = std::stoull(field);
    rows.push_back(row);
  }
  TomographyGrid grid;
  auto push_unique = [](std::vector<double>& v, double x) {
    for (double y : v)
      if (std::abs(y - x) < 1e-12) return;
    v.push_back(x);
  };
  for (const auto& row : rows) {
    push_unique(grid.betas, row.beta);
    push_unique(grid.alphas, row.alpha);
  }
  std::sort(grid.betas.begin(), grid.betas.end());
  std::sort(grid.alphas.begin(), grid.alphas.end());
  int n_spins = 1;
  for (const auto& row : rows) n_spins = std::max(n_spins, row.label.min_spins());

  SampleSet set(grid, path, seed, n_spins);
  auto index_of = [](const std::vector<double>& v, double x) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i] - x) < 1e-12) return static_cast<int>(i);
    throw std::invalid_argument("SampleSet: inconsistent CSV grid");
  };
  for (const auto& row : rows)
    set.set(row.label, row.j, index_of(grid.betas, row.beta), index_of(grid.alphas, row.alpha),
            row.v);
  return set;
}

Complex sample_analytic(const Operator& a, const DropletLabel& label, int j, double beta,
                        double alpha) {
  const Operator& t = axial(label, j, a.n_spins());
  const Operator rotation = global_rotation(a.n_spins(), alpha, beta);
  return s_factor(j) * hs_inner(conjugate(rotation, t), a);
}

Complex sample_expectation(const Operator& rho, const DropletLabel& label, int j, double beta,
                           double alpha) {
  if (!rho.is_hermitian())
    throw std::invalid_argument(
        "sample_expectation: rho is not Hermitian; use temporal averaging");
  const Operator& t = axial(label, j, rho.n_spins());
  const Operator rotation = global_rotation(rho.n_spins(), alpha, beta);
  return s_factor(j) * expectation(rho, conjugate(rotation, t));
}

Complex sample_indirect(const Operator& rho, const DropletLabel& label, int j, double beta,
                        double alpha, const MeasurementPlan& plan, Backend backend,
                        const NoiseModel& noise, const SampleCoord& coord) {
  const int n = rho.n_spins();
  if (plan.n_spins() != n) throw std::invalid_argument("sample_indirect: plan size mismatch");
  if (!label.has_rank(j))
    throw InvalidRank("sample_indirect: rank not admissible for label " + label.str());
  const auto& entries = plan.entries(label, j);

  Operator rotated = Operator::zero(n);
  if (backend == Backend::Ideal) {
    // Eq. form: rho~ = R^{-1} rho R
    const Operator rotation = global_rotation(n, alpha, beta);
    rotated = Operator(n, rotation.matrix().adjoint() * rho.matrix() * rotation.matrix());
  } else {
    // hard pulse [beta]_{alpha - pi/2} on all spins; the residual z rotation
    // relative to R^{-1} cancels in the sum because [F_z, T_j0] = 0
    const double flip = beta * (1.0 + noise.flip_error);
    rotated = apply_pulse(rho, Pulse{flip, alpha - kPi / 2, all_spins(n)});
  }

  Complex acc{};
  int entry_index = 0;
  for (const auto& entry : entries) {
    Operator transformed = Operator::zero(n);
    if (backend == Backend::Ideal) {
      transformed = conjugate(entry.u, rotated);
    } else {
      transformed = rotated;
      for (const auto& element : entry.u_pulses.with_flip_error(noise.flip_error).elements)
        transformed = apply_pulse(transformed, std::get<Pulse>(element));
    }
    Complex value = expectation(transformed, pauli_product(entry.m, n));
    if (noise.sigma != 0.0)
      value += noise.sigma * gaussian_noise(noise.seed,
                                            {label_key(label), static_cast<std::uint64_t>(j),
                                             static_cast<std::uint64_t>(entry_index),
                                             static_cast<std::uint64_t>(coord.beta_index),
                                             static_cast<std::uint64_t>(coord.alpha_index),
                                             static_cast<std::uint64_t>(coord.part_index)});
    acc += entry.r * value;
    ++entry_index;
  }
  return s_factor(j) * acc;
}

namespace {

std::vector<SampleSet::Key> expand_ranks(const std::vector<DropletLabel>& labels) {
  std::vector<SampleSet::Key> keys;
  for (const auto& label : labels)
    for (int j : label.ranks()) keys.push_back({label, j});
  return keys;
}

SampleSet sample_grid(const Operator& rho, const std::vector<SampleSet::Key>& keys,
                      const TomographyGrid& grid, SamplePath path, Backend backend,
                      const NoiseModel& noise, int part_index, SamplePath tag) {
  const int n = rho.n_spins();
  SampleSet out(grid, tag, noise.seed, n);
  const MeasurementPlan* plan =
      path == SamplePath::Indirect ? &MeasurementPlan::builtin(n) : nullptr;
  for (const auto& [label, j] : keys) {
    for (std::size_t bi = 0; bi < grid.betas.size(); ++bi) {
      for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
        const double beta = grid.betas[bi], alpha = grid.alphas[ai];
        Complex v{};
        switch (path) {
          case SamplePath::Analytic:
            v = sample_analytic(rho, label, j, beta, alpha);
            break;
          case SamplePath::Expectation: {
            v = sample_expectation(rho, label, j, beta, alpha);
            if (noise.sigma != 0.0)
              v += noise.sigma *
                   gaussian_noise(noise.seed,
                                  {label_key(label), static_cast<std::uint64_t>(j), 0ULL,
                                   static_cast<std::uint64_t>(bi),
                                   static_cast<std::uint64_t>(ai),
                                   static_cast<std::uint64_t>(part_index)}) *
                   s_factor(j);
            break;
          }
          case SamplePath::Indirect:
            v = sample_indirect(rho, label, j, beta, alpha, *plan, backend, noise,
                                {static_cast<int>(bi), static_cast<int>(ai), part_index});
            break;
          case SamplePath::Averaged:
            throw std::invalid_argument("scan: 'averaged' is not a primitive path");
        }
        out.set(label, j, static_cast<int>(bi), static_cast<int>(ai), v);
      }
    }
  }
  return out;
}

SampleSet average_parts(const std::vector<std::pair<Complex, Operator>>& parts,
                        const std::vector<SampleSet::Key>& keys, const TomographyGrid& grid,
                        SamplePath path, Backend backend, const NoiseModel& noise) {
  SampleSet out(grid, SamplePath::Averaged, noise.seed, 0);
  int part_index = 0;
  for (const auto& [weight, rho] : parts) {
    if (path != SamplePath::Analytic && !rho.is_hermitian())
      throw std::invalid_argument("temporal_average: parts must be Hermitian");
    out.accumulate(weight, sample_grid(rho, keys, grid, path, backend, noise, part_index,
                                       SamplePath::Averaged));
    ++part_index;
  }
  return out;
}

}  // namespace

SampleSet temporal_average(const std::vector<std::pair<Complex, Operator>>& parts,
                           const DropletLabel& label, int j, const TomographyGrid& grid,
                           SamplePath path, Backend backend, const NoiseModel& noise) {
  return average_parts(parts, {{label, j}}, grid, path, backend, noise);
}

SampleSet scan(const Operator& rho, const std::vector<DropletLabel>& labels,
               const TomographyGrid& grid, SamplePath path, Backend backend,
               const NoiseModel& noise) {
  return sample_grid(rho, expand_ranks(labels), grid, path, backend, noise, 0, path);
}

SampleSet scan_parts(const std::vector<std::pair<Complex, Operator>>& parts,
                     const std::vector<DropletLabel>& labels, const TomographyGrid& grid,
                     SamplePath path, Backend backend, const NoiseModel& noise) {
  return average_parts(parts, expand_ranks(labels), grid, path, backend, noise);
}

RmsReport rms_error(const SampleSet& measured, const SampleSet& reference) {
  if (!measured.grid().approx_equal(reference.grid()))
    throw std::invalid_argument("rms_error: sample sets use different grids");
  const auto keys_a = measured.keys(), keys_b = reference.keys();
  if (keys_a != keys_b)
    throw std::invalid_argument("rms_error: sample sets cover different (label, rank) entries");

  RmsReport report;
  double total = 0;
  std::size_t count = 0;
  for (const auto& label : measured.labels()) {
    const Matrix diff = measured.droplet_values(label) - reference.droplet_values(label);
    const double sq = diff.squaredNorm();
    report.per_label[label] = std::sqrt(sq / static_cast<double>(diff.size()));
    total += sq;
    count += static_cast<std::size_t>(diff.size());
  }
  report.overall = count == 0 ? 0.0 : std::sqrt(total / static_cast<double>(count));
  return report;
}

DropletFunction least_squares_fit(const SampleSet& samples, int n_spins) {
  const auto& grid = samples.grid();
  DropletFunction out(n_spins);
  for (const auto& [label, j] : samples.keys()) {
    const int cols = 2 * j + 1;
    Matrix a(grid.size(), cols);
    Eigen::VectorXcd b(grid.size());
    std::size_t row = 0;
    for (std::size_t bi = 0; bi < grid.betas.size(); ++bi) {
      for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
        for (int m = -j; m <= j; ++m)
          a(row, m + j) = ylm(j, m, grid.betas[bi], grid.alphas[ai]);
        b(row) = samples.value(label, j, static_cast<int>(bi), static_cast<int>(ai));
        ++row;
      }
    }
    const Matrix ata = a.adjoint() * a;
    const Eigen::VectorXcd c = ata.ldlt().solve(a.adjoint() * b);
    for (int m = -j; m <= j; ++m) out.set_coefficient(label, j, m, c(m + j));
  }
  return out;
}

std::vector<DropletLabel> default_scan_labels(int n_spins, SamplePath path) {
  std::vector<DropletLabel> labels = system_labels(n_spins);
  if (path == SamplePath::Indirect) {
    labels.erase(std::remove_if(labels.begin(), labels.end(),
                                [](const DropletLabel& l) {
                                  return l.kind() == DropletLabel::Kind::Empty;
                                }),
                 labels.end());
  }
  return labels;
}

}  // namespace drops
