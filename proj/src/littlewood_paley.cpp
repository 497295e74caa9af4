#include "dnls/littlewood_paley.hpp"

#include <cmath>
#include <numbers>

#include "dnls/lattice.hpp"

namespace dnls {

namespace {

double mollifier_step(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double eta_of(const Vec3& xi, double h) {
  return 2.0 * std::numbers::pi * h * std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

}  // namespace

double bump_phi(double r) noexcept {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = mollifier_step(2.0 - r);
  const double b = mollifier_step(r - 1.0);
  return a / (a + b);
}

double band_psi(double r) noexcept { return bump_phi(r) - bump_phi(2.0 * r); }

double LittlewoodPaleyBand::multiplier(double eta) const noexcept {
  const double upper = top ? 1.0 : bump_phi(eta / N);
  const double lower = lowest ? 0.0 : bump_phi(2.0 * eta / N);
  return upper - lower;
}

std::vector<LittlewoodPaleyBand> littlewood_paley_bands(const LatticeGrid& grid) {
  const double xi_min = 2.0 * std::numbers::pi / grid.box_length();
  const double eta_min = 2.0 * std::numbers::pi * grid.spacing() * xi_min;
  std::vector<LittlewoodPaleyBand> bands;
  double N = 1.0;
  while (true) {
    const bool next_meets_grid = 2.0 * (0.5 * N) > eta_min;
    bands.push_back({N, N == 1.0, !next_meets_grid});
    if (!next_meets_grid) break;
    N *= 0.5;
  }
  return bands;
}

LatticeField lp_project(const LatticeField& f, const LittlewoodPaleyBand& band) {
  const double h = f.grid().spacing();
  return apply_multiplier(f, [&](const Vec3& xi) { return Complex(band.multiplier(eta_of(xi, h))); });
}

double square_function_norm(const LatticeField& f) {
  std::vector<double> acc(f.size(), 0.0);
  for (const auto& band : littlewood_paley_bands(f.grid())) {
    const LatticeField piece = lp_project(f, band);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(piece[i]);
  }
  LatticeField s(f.grid());
  for (std::size_t i = 0; i < acc.size(); ++i) s[i] = std::sqrt(acc[i]);
  return lp_norm(s, 2.0);
}

}  // namespace dnls
