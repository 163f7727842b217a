#include "drops/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace drops {

namespace {

std::array<std::uint8_t, 3> hsv_to_rgb(double h_deg, double s, double v) {
  const double c = v * s;
  const double hp = h_deg / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = v - c;
  auto to8 = [&](double u) { return static_cast<std::uint8_t>(std::lround(255.0 * (u + m))); };
  return {to8(r), to8(g), to8(b)};
}

SurfaceMesh::Vertex make_vertex(double beta, double alpha, Complex f) {
  const double r = std::abs(f);
  const double eta = std::atan2(f.imag(), f.real());
  const auto rgb = phase_color(eta);
  return {r * std::sin(beta) * std::cos(alpha), r * std::sin(beta) * std::sin(alpha),
          r * std::cos(beta), rgb[0], rgb[1], rgb[2]};
}

}  // namespace

std::array<std::uint8_t, 3> phase_color(double eta) {
  // red (0 deg) at phase 0, green (120 deg) at +-pi; full wheel over 2 pi
  double hue;
  if (eta >= 0)
    hue = 120.0 * eta / kPi;
  else
    hue = std::fmod(360.0 + 240.0 * eta / kPi, 360.0);
  return hsv_to_rgb(hue, 1.0, 1.0);
}

SurfaceMesh droplet_mesh(const SampleSet& samples, const DropletLabel& label) {
  const auto& grid = samples.grid();
  const Matrix values = samples.droplet_values(label);
  const int nb = static_cast<int>(grid.betas.size());
  const int na = static_cast<int>(grid.alphas.size());

  SurfaceMesh mesh;
  mesh.degenerate = values.cwiseAbs().maxCoeff() < 1e-14;

  const bool pole_top = std::abs(grid.betas.front()) < 1e-12;
  const bool pole_bottom = nb > 1 && std::abs(grid.betas.back() - kPi) < 1e-12;

  // row index -> vertex index of column 0 (-1 marks a collapsed pole row)
  std::vector<int> row_start(nb, -1);
  int top_vertex = -1, bottom_vertex = -1;

  if (pole_top) {
    top_vertex = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(make_vertex(0.0, 0.0, values.row(0).mean()));
  }
  const int first_row = pole_top ? 1 : 0;
  const int last_row = pole_bottom ? nb - 2 : nb - 1;
  for (int bi = first_row; bi <= last_row; ++bi) {
    row_start[bi] = static_cast<int>(mesh.vertices.size());
    for (int ai = 0; ai < na; ++ai)
      mesh.vertices.push_back(make_vertex(grid.betas[bi], grid.alphas[ai], values(bi, ai)));
  }
  if (pole_bottom) {
    bottom_vertex = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(make_vertex(kPi, 0.0, values.row(nb - 1).mean()));
  }

  auto quad = [&](int a, int b, int c, int d) {
    mesh.faces.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                          static_cast<std::uint32_t>(c)});
    mesh.faces.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(c),
                          static_cast<std::uint32_t>(d)});
  };

  if (pole_top && first_row <= last_row)
    for (int ai = 0; ai + 1 < na; ++ai)
      mesh.faces.push_back({static_cast<std::uint32_t>(top_vertex),
                            static_cast<std::uint32_t>(row_start[first_row] + ai),
                            static_cast<std::uint32_t>(row_start[first_row] + ai + 1)});
  for (int bi = first_row; bi < last_row; ++bi)
    for (int ai = 0; ai + 1 < na; ++ai)
      quad(row_start[bi] + ai, row_start[bi + 1] + ai, row_start[bi + 1] + ai + 1,
           row_start[bi] + ai + 1);
  if (pole_bottom && first_row <= last_row)
    for (int ai = 0; ai + 1 < na; ++ai)
      mesh.faces.push_back({static_cast<std::uint32_t>(row_start[last_row] + ai),
                            static_cast<std::uint32_t>(bottom_vertex),
                            static_cast<std::uint32_t>(row_start[last_row] + ai + 1)});
  return mesh;
}

void write_ply(std::ostream& out, const SurfaceMesh& mesh) {
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "element face " << mesh.faces.size() << "\n";
  out << "property list uchar uint vertex_indices\n";
  out << "end_header\n";
  char buf[160];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.12g %.12g %.12g %u %u %u\n", v.x, v.y, v.z, v.r, v.g,
                  v.b);
    out << buf;
  }
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

}  // namespace drops
