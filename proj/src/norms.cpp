#include <algorithm>

#include "dnls/analysis.hpp"
#include "dnls/harness.hpp"

namespace dnls {

NormsReport run_norms(const ExperimentConfig& cfg) {
  cfg.validate();
  NormsReport report;
  report.config_hash = cfg.hash_hex();

  AdmissiblePair pair;
  if (cfg.alpha > 0.5) {
    pair = {6.0, kInfinity, AdmissiblePair::Kind::kResonance};
  } else {
    pair = {4.0, kInfinity, AdmissiblePair::Kind::kStandard};
  }
  const std::size_t per_unit = 64;

  for (std::size_t M : cfg.grid_sizes) {
    const LatticeGrid grid(cfg.dimension, M, cfg.box_length);
    double worst = 0.0;
    for (const auto& f : smooth_corpus(grid, static_cast<std::size_t>(cfg.corpus_size), cfg.seed)) {
      worst = std::max(worst, strichartz_quotient(f, cfg.alpha, pair, cfg.strichartz_window, per_unit));
    }
    report.strichartz.push_back({cfg.alpha, pair.q, pair.r,
                                 pair.kind == AdmissiblePair::Kind::kResonance, grid.spacing(), worst});
  }
  for (std::size_t i = 1; i < report.strichartz.size(); ++i) {
    const double ratio = report.strichartz[i].quotient / report.strichartz[i - 1].quotient;
    report.checks.push_back({"strichartz_stability_M" + std::to_string(cfg.grid_sizes[i]),
                             ratio <= 1.10, ratio, 1.10, "quotient ratio under h-halving"});
  }

  double worst_gap = 0.0;
  for (std::size_t M : cfg.grid_sizes) {
    const LatticeGrid grid(cfg.dimension, M, cfg.box_length);
    worst_gap = std::max(worst_gap, max_phase_gap_ratio(grid, cfg.alpha, 1.0));
  }
  report.checks.push_back({"phase_gap_ratio", worst_gap <= 2.0, worst_gap, 2.0,
                           "max over the grid sweep at t = 1"});
  return report;
}

}  // namespace dnls
