#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "dnls/analysis.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/harness.hpp"
#include "text.hpp"
#include "dnls/transfer.hpp"

namespace dnls {

namespace {

EvolutionParams params_of(const ExperimentConfig& cfg) {
  EvolutionParams params;
  params.alpha = cfg.alpha;
  params.p = cfg.p;
  params.lambda = cfg.lambda;
  params.dt = cfg.effective_dt();
  params.horizon = cfg.horizon;
  params.unsafe = cfg.unsafe_params;
  return params;
}

ProfileSpec datum_of(const ExperimentConfig& cfg) {
  ProfileSpec spec = cfg.initial_datum;
  if (spec.kind == ProfileSpec::Kind::kRandom && !spec.seed_given) spec.seed = cfg.seed;
  return spec;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Results go to per-index slots, so the
// outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Reference {
  Trajectory traj;
  std::vector<ContinuumField> fields;
};

Reference make_reference(const ContinuumField& u0, const EvolutionParams& params,
                         const std::vector<double>& times) {
  Reference ref{continuum_reference(u0, params, times), {}};
  ref.fields.reserve(ref.traj.snapshots.size());
  for (const auto& s : ref.traj.snapshots) ref.fields.push_back(ContinuumField::from_samples(s));
  return ref;
}

LevelRow run_level(const ContinuumField& u0, const Reference& ref, const LatticeGrid& grid,
                   const EvolutionParams& params, const std::vector<double>& times) {
  LevelRow row;
  row.points = grid.points_per_axis();
  row.h = grid.spacing();
  try {
    const DispersionSymbol s(params.alpha, SymbolKind::kDiscrete);
    const Trajectory traj = evolve(discretize(u0, grid), params, s, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      row.errors.push_back(cross_l2_distance(interpolate(traj.snapshots[k]), ref.fields[k]));
    }
    row.mass_drift = mass_drift(traj);
    row.diagnostics = diagnostics(traj);
  } catch (const Error& e) {
    row.ok = false;
    row.failure = e.what();
    row.errors.assign(times.size(), std::nan(""));
  }
  return row;
}

RateFit fit_rate(const ConvergenceReport& report, std::size_t k) {
  RateFit fit;
  fit.t = report.times[k];
  std::vector<double> hs, es;
  std::vector<const LevelRow*> usable;
  for (const auto& row : report.rows) {
    if (row.ok && row.errors[k] > 0.0 && std::isfinite(row.errors[k])) usable.push_back(&row);
  }
  // Rows are ordered coarse to fine.
  if (!usable.empty() && usable.front()->errors[k] > 0.1 * report.initial_l2) {
    usable.erase(usable.begin());
    fit.coarsest_excluded = true;
  }
  for (const auto* row : usable) {
    hs.push_back(row->h);
    es.push_back(row->errors[k]);
  }
  fit.levels_used = hs.size();
  if (hs.size() < 4) return fit;
  const double slope = loglog_slope(hs, es);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    mx += std::log(hs[i]);
    my += std::log(es[i]);
  }
  mx /= hs.size();
  my /= hs.size();
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double r = std::log(es[i]) - intercept - slope * std::log(hs[i]);
    rss += r * r;
  }
  fit.rate = slope;
  fit.prefactor = std::exp(intercept);
  fit.residual = std::sqrt(rss / hs.size());
  return fit;
}

void fit_joint(ConvergenceReport& report) {
  std::vector<double> logh, ts, loge;
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    if (report.times[k] <= 0.0 || !report.fits[k].rate) continue;
    std::size_t skip = report.fits[k].coarsest_excluded ? 1 : 0;
    for (const auto& row : report.rows) {
      if (!row.ok || !(row.errors[k] > 0.0)) continue;
      if (skip > 0) {
        --skip;
        continue;
      }
      logh.push_back(std::log(row.h));
      ts.push_back(std::abs(report.times[k]));
      loge.push_back(std::log(row.errors[k]));
    }
  }
  if (logh.size() < 3) return;
  const bool has_time = std::any_of(ts.begin(), ts.end(), [&](double t) { return t != ts[0]; });
  const Eigen::Index cols = has_time ? 3 : 2;
  Eigen::MatrixXd X(static_cast<Eigen::Index>(logh.size()), cols);
  Eigen::VectorXd y(static_cast<Eigen::Index>(logh.size()));
  for (std::size_t i = 0; i < logh.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    X(r, 0) = 1.0;
    X(r, 1) = logh[i];
    if (has_time) X(r, 2) = ts[i];
    y(r) = loge[i];
  }
  const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
  report.fit_A = std::exp(beta(0));
  report.fit_rate = beta(1);
  if (has_time) {
    report.fit_B = beta(2);
  } else {
    report.flags.push_back("single snapshot time: exponential coefficient B not identifiable");
  }
  report.fit_residual = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(logh.size()));
}

CheckResult make_check(std::string name, bool passed, double value, double threshold,
                       std::string detail = {}) {
  return {std::move(name), passed, value, threshold, std::move(detail)};
}

}  // namespace

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  const EvolutionParams params = params_of(cfg);
  const std::size_t ref_points = cfg.grid_sizes.back() * static_cast<std::size_t>(cfg.reference_multiplier);
  const LatticeGrid ref_grid(cfg.dimension, ref_points, cfg.box_length);
  const ContinuumField u0 = ContinuumField::from_samples(sample_profile(datum_of(cfg), ref_grid));

  ConvergenceReport report;
  report.config_hash = cfg.hash_hex();
  report.canonical_config = cfg.canonical();
  report.times = cfg.snapshot_times;
  report.initial_l2 = u0.l2_norm();
  report.theory_rate = cfg.alpha / (1.0 + cfg.alpha);
  report.degenerate_input = report.initial_l2 == 0.0;

  const Reference ref = make_reference(u0, params, report.times);
  report.reference_boundary_ratios = ref.traj.boundary_ratios;
  report.reference_mass_drift = mass_drift(ref.traj);
  for (std::size_t k = 1; k < ref.traj.boundary_ratios.size(); ++k) {
    if (ref.traj.boundary_ratios[k] > 1e-10) {
      report.flags.push_back("reference boundary ratio " +
                             detail::short_num(ref.traj.boundary_ratios[k]) + " at t = " +
                             detail::short_num(report.times[k]) + " exceeds 1e-10");
    }
  }

  report.rows.resize(cfg.grid_sizes.size());
  parallel_for(cfg.grid_sizes.size(), cfg.workers, [&](std::size_t i) {
    const LatticeGrid grid(cfg.dimension, cfg.grid_sizes[i], cfg.box_length);
    report.rows[i] = run_level(u0, ref, grid, params, report.times);
  });
  for (const auto& row : report.rows) {
    if (!row.ok) {
      spdlog::warn("level M={} failed: {}", row.points, row.failure);
      report.flags.push_back("level M=" + std::to_string(row.points) + " failed: " + row.failure);
    }
  }

  if (report.degenerate_input) {
    report.flags.push_back("degenerate input: initial datum is zero, rates not fitted");
  }
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    report.fits.push_back(fit_rate(report, k));
    if (!report.degenerate_input && !report.fits.back().rate) {
      report.flags.push_back("t = " + detail::short_num(report.times[k]) +
                             ": fewer than 4 usable grid levels, rate not fitted");
    }
  }
  if (!report.degenerate_input) fit_joint(report);

  // Checks recorded as data.
  double worst_mass = report.reference_mass_drift;
  for (const auto& row : report.rows) {
    if (row.ok) worst_mass = std::max(worst_mass, row.mass_drift);
  }
  report.checks.push_back(make_check("mass_conservation", worst_mass <= 1e-11, worst_mass, 1e-11));

  const double bound = report.theory_rate - 0.05;
  for (const auto& fit : report.fits) {
    if (fit.t <= 0.0 || !fit.rate) continue;
    report.checks.push_back(make_check("rate_lower_bound_t=" + detail::short_num(fit.t),
                                       *fit.rate >= bound, *fit.rate, bound));
  }

  if (!report.degenerate_input) {
    for (std::size_t k = 0; k < report.times.size(); ++k) {
      if (report.times[k] <= 0.0) continue;
      int inversions = 0;
      for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& coarse = report.rows[i - 1];
        const auto& fine = report.rows[i];
        if (coarse.ok && fine.ok && !(fine.errors[k] < coarse.errors[k])) ++inversions;
      }
      if (inversions > 0) {
        report.flags.push_back("monotone refinement violated at t = " +
                               detail::short_num(report.times[k]));
      }
      report.checks.push_back(make_check("monotone_refinement_t=" + detail::short_num(report.times[k]),
                                         inversions == 0, inversions, 0.0));
    }
  }
  if (cfg.lambda != 0.0 && !report.degenerate_input) {
    // The error envelope grows with |t| for a nonlinear flow.
    int inversions = 0;
    for (const auto& row : report.rows) {
      if (!row.ok) continue;
      for (std::size_t k = 1; k < report.times.size(); ++k) {
        if (report.times[k - 1] > 0.0 && !(row.errors[k] > row.errors[k - 1])) ++inversions;
      }
    }
    report.checks.push_back(make_check("error_growth_in_time", inversions == 0, inversions, 0.0));
  }
  if (report.fit_B) {
    report.checks.push_back(make_check("exponential_coefficient_nonnegative", *report.fit_B >= 0.0,
                                       *report.fit_B, 0.0));
  }

  if (cfg.dt_check && !report.degenerate_input && report.rows.back().ok) {
    EvolutionParams half = params;
    half.dt = 0.5 * params.dt;
    const Reference ref_half = make_reference(u0, half, report.times);
    const LatticeGrid finest(cfg.dimension, cfg.grid_sizes.back(), cfg.box_length);
    const LevelRow row_half = run_level(u0, ref_half, finest, half, report.times);
    double worst = 0.0;
    for (std::size_t k = 0; k < report.times.size(); ++k) {
      const double e = report.rows.back().errors[k];
      if (report.times[k] <= 0.0 || !(e > 0.0)) continue;
      worst = std::max(worst, std::abs(row_half.errors[k] - e) / e);
    }
    report.checks.push_back(make_check("dt_refinement", row_half.ok && worst <= 0.01, worst, 0.01,
                                       "finest level and reference rerun with dt/2"));
  }
  return report;
}

EvolveReport run_evolve(const ExperimentConfig& cfg) {
  cfg.validate();
  const EvolutionParams params = params_of(cfg);
  const LatticeGrid grid(cfg.dimension, cfg.grid_sizes.back(), cfg.box_length);
  const std::size_t ref_points = cfg.grid_sizes.back() * static_cast<std::size_t>(cfg.reference_multiplier);
  const LatticeGrid ref_grid(cfg.dimension, ref_points, cfg.box_length);
  const ContinuumField u0 = ContinuumField::from_samples(sample_profile(datum_of(cfg), ref_grid));
  const DispersionSymbol s(cfg.alpha, SymbolKind::kDiscrete);
  const Trajectory traj = evolve(discretize(u0, grid), params, s, cfg.snapshot_times);

  EvolveReport report;
  report.config_hash = cfg.hash_hex();
  report.canonical_config = cfg.canonical();
  report.points = grid.points_per_axis();
  report.mass_drift = mass_drift(traj);
  report.energy_drift = energy_drift(traj);
  report.diagnostics = diagnostics(traj);
  report.final_state = traj.snapshots.back();
  report.checks.push_back(
      make_check("mass_conservation", report.mass_drift <= 1e-11, report.mass_drift, 1e-11));
  return report;
}

}  // namespace dnls
