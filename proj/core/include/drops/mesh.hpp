#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include "drops/tomography.hpp"

namespace drops {

/// Triangulated droplet surface: vertex distance from the origin is |f|,
/// vertex color encodes the phase of f.
struct SurfaceMesh {
  struct Vertex {
    double x, y, z;
    std::uint8_t r, g, b;
  };

  std::vector<Vertex> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;

  /// True when every sample is numerically zero (point-like mesh).
  bool degenerate = false;
};

/// Phase-to-color map: red at phase 0, green at phase +-pi, a continuous hue
/// wheel in between (positive reals warm, negative reals green).
std::array<std::uint8_t, 3> phase_color(double eta);

/// Build the surface for one droplet from rank-summed grid samples. Rows at
/// beta = 0 and beta = pi collapse to single vertices carrying the
/// alpha-averaged sample.
SurfaceMesh droplet_mesh(const SampleSet& samples, const DropletLabel& label);

/// ASCII PLY with per-vertex colors.
void write_ply(std::ostream& out, const SurfaceMesh& mesh);

}  // namespace drops
