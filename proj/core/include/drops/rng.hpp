#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace drops {

/// SplitMix64 finalizer; bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based keyed stream: the draw depends only on (seed, key words),
/// never on call order, so scans parallelize and stay reproducible.
inline std::uint64_t counter_hash(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc908ULL);
  for (std::uint64_t word : key) h = mix64(h ^ word);
  return h;
}

/// Standard-normal draw for the keyed counter (Box-Muller on two mixed words).
inline double gaussian_noise(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  const std::uint64_t h = counter_hash(seed, key);
  const std::uint64_t h2 = mix64(h ^ 0x3c6ef372fe94f82aULL);
  const double u1 = (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;  // in (0, 1]
  const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;        // in [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace drops
