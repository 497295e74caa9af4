#pragma once

#include <vector>

#include "dnls/field.hpp"

namespace dnls {

/// Smooth radial cutoff: 1 on r <= 1, 0 on r >= 2, exp(-1/x) mollifier transition between.
double bump_phi(double r) noexcept;

/// Dyadic annulus psi(r) = phi(r) - phi(2 r), supported in 1/2 <= r <= 2.
double band_psi(double r) noexcept;

/// One dyadic frequency band of the Littlewood-Paley decomposition on a grid.
///
/// The multiplier at eta = 2 pi h |xi| is A(eta) - B(eta), with A = phi(eta/N) (or 1 for the
/// top band N = 1) and B = phi(2 eta/N) (or 0 for the lowest band). The top band absorbs all
/// frequencies above the N = 1 annulus and the lowest band absorbs everything below its own,
/// so the bands of a grid sum to exactly 1, zero frequency included.
struct LittlewoodPaleyBand {
  double N = 1.0;
  bool top = true;
  bool lowest = true;

  double multiplier(double eta) const noexcept;
};

/// Bands N = 1, 1/2, ..., N_min, where N_min is the smallest dyadic number whose annulus
/// (N/2, 2N) still contains a nonzero grid frequency.
std::vector<LittlewoodPaleyBand> littlewood_paley_bands(const LatticeGrid& grid);

/// P_N f: the band multiplier applied in frequency.
LatticeField lp_project(const LatticeField& f, const LittlewoodPaleyBand& band);

/// || (sum_N |P_N f|^2)^{1/2} ||_{L_h^2} over all bands of the grid.
double square_function_norm(const LatticeField& f);

}  // namespace dnls
