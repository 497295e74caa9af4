#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/grid.hpp"

namespace dnls {

/// Named initial datum. Positions are absolute box coordinates; a negative center means the box
/// midpoint.
///
///   gaussian(width, center, amplitude)   A exp(-|x - c|^2 / (2 w^2))
///   multi_bump(count, width, amplitude)  `count` Gaussians evenly spaced along the diagonal
///                                        between L/4 and 3L/4, alternating sign
///   random(seed, kmax, width)            random complex modes |k_j| <= kmax (in units 2 pi/L)
///                                        under a Gaussian window of the given width
///   zero
struct ProfileSpec {
  enum class Kind { kGaussian, kMultiBump, kRandom, kZero };
  Kind kind = Kind::kGaussian;
  double width = 1.0;
  double center = -1.0;
  double amplitude = 1.0;
  int count = 2;
  int kmax = 8;
  std::uint64_t seed = 0;
  bool seed_given = false;

  /// Parses "name(key=value, ...)"; ConfigError on unknown names, keys or malformed values.
  static ProfileSpec parse(const std::string& text);
  /// Canonical text form; parse(to_string()) round-trips.
  std::string to_string() const;
};

/// Point values of the profile at the grid sites. Every grid sharing the box samples the same
/// underlying function.
LatticeField sample_profile(const ProfileSpec& spec, const LatticeGrid& grid);

/// `count` smooth random fields: random(seed + i, kmax, width) sampled on the grid.
std::vector<LatticeField> smooth_corpus(const LatticeGrid& grid, std::size_t count,
                                        std::uint64_t seed, int kmax = 6, double width = 2.0);

/// `count` lattice-scale fields: fixed pseudo-random site values on `sites` consecutive sites
/// starting at the box midpoint, zero elsewhere. The values do not depend on the spacing, so
/// the corpus is the same sequence on every grid with the same number of points.
std::vector<LatticeField> lattice_corpus(const LatticeGrid& grid, std::size_t count,
                                         std::uint64_t seed, std::size_t sites = 8);

}  // namespace dnls
