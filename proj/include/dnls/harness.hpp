#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dnls/evolution.hpp"
#include "dnls/profiles.hpp"

namespace dnls {

/// Flat `key = value` experiment description. Lists are comma separated, `#` starts a comment,
/// unknown or repeated keys are ConfigErrors.
struct ExperimentConfig {
  int dimension = 1;
  double alpha = 1.0;
  double p = 3.0;
  double lambda = 1.0;
  double box_length = 32.0;
  std::vector<std::size_t> grid_sizes{64, 128, 256, 512, 1024};
  int reference_multiplier = 4;
  std::optional<double> dt;  // empty: min(1e-3, h_min^2)
  double horizon = 1.0;
  std::vector<double> snapshot_times{0.0, 0.5, 1.0};
  ProfileSpec initial_datum;
  double delta = 0.1;
  std::string output_dir = "dnls-out";
  std::uint64_t seed = 0;
  int workers = 1;
  bool unsafe_params = false;
  bool dt_check = true;

  std::vector<double> kernel_alphas{0.3, 0.75, 1.0};
  std::vector<double> kernel_bands{1.0};
  double kernel_spacing = 1.0 / 32.0;
  double kernel_t_min = 10.0;
  double kernel_t_max = 1000.0;
  int kernel_samples = 16;

  int corpus_size = 20;
  double strichartz_window = 2.0;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Type and range checks plus the well-posedness windows (unless unsafe_params).
  void validate() const;
  double effective_dt() const;
  /// Canonical key = value text with every field spelled out; hash() is FNV-1a 64 of it.
  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const std::string& bytes);

/// Pass/fail of one invariant with its measured value and threshold.
struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct LevelRow {
  std::size_t points = 0;
  double h = 0.0;
  std::vector<double> errors;  // one per snapshot time
  double mass_drift = 0.0;
  std::vector<DiagnosticsRow> diagnostics;
  bool ok = true;
  std::string failure;
};

struct RateFit {
  double t = 0.0;
  std::optional<double> rate;
  std::optional<double> prefactor;
  double residual = 0.0;
  std::size_t levels_used = 0;
  bool coarsest_excluded = false;
};

struct ConvergenceReport {
  std::string config_hash;
  std::string canonical_config;
  std::vector<double> times;
  std::vector<LevelRow> rows;
  std::vector<RateFit> fits;
  /// error ~ A h^rate e^{B t} over all (h, t > 0) rows used in the per-time fits.
  std::optional<double> fit_A, fit_B, fit_rate;
  double fit_residual = 0.0;
  bool degenerate_input = false;
  std::vector<std::string> flags;
  std::vector<double> reference_boundary_ratios;
  double reference_mass_drift = 0.0;
  std::vector<CheckResult> checks;
  double initial_l2 = 0.0;
  double theory_rate = 0.0;
};

/// Grid-refinement sweep: continuum reference once, then per grid size discretize, evolve,
/// interpolate and compare at each snapshot time. Failed levels are recorded, not fatal.
ConvergenceReport run_convergence(const ExperimentConfig& config);

struct KernelSeries {
  double alpha = 0.0;
  double N = 1.0;
  double h = 0.0;
  std::vector<double> t;
  std::vector<double> x_at_sup;
  std::vector<Complex> value_at_sup;
  std::vector<double> sup;
  std::vector<double> lattice_estimate;
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;
  double expected_exponent = 0.0;
  /// The degenerate frequency xi_0 lies in the band support (resonant regime).
  bool resonant = false;
};

struct KernelReport {
  std::string config_hash;
  std::vector<KernelSeries> series;
  std::vector<CheckResult> checks;
};

/// Decay fits of sup_x |K_{N,t}| for every (alpha, N) of the config. Rejects alpha = 1/2 and
/// alpha outside (0, 1] with ConfigError. An empty alpha list gives an empty report.
KernelReport run_kernel_study(const ExperimentConfig& config);

struct StrichartzRow {
  double alpha = 0.0;
  double q = 0.0;
  double r = 0.0;
  bool resonance = false;
  double h = 0.0;
  double quotient = 0.0;  // max over the corpus
};

struct NormsReport {
  std::string config_hash;
  std::vector<StrichartzRow> strichartz;
  std::vector<CheckResult> checks;
};

/// Strichartz quotients over a smooth random corpus for the config's alpha and grid sizes,
/// with the resonance pair (6, inf) for alpha > 1/2 and the standard pair (4, inf) otherwise.
NormsReport run_norms(const ExperimentConfig& config);

struct CheckOptions {
  /// Test hook: "plancherel" perturbs the spectral weight used by the Plancherel check.
  std::string inject_fault;
  std::uint64_t seed = 0;
};

struct CheckSummary {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// The module invariant suites as data: every check reports its measured margin.
CheckSummary run_checks(const CheckOptions& options = {});

/// Output writers. Each writes into `dir` (created if missing).
void write_convergence(const ConvergenceReport& report, const std::filesystem::path& dir);
void write_kernel(const KernelReport& report, const std::filesystem::path& dir);
void write_norms(const NormsReport& report, const std::filesystem::path& dir);
void write_checks(const CheckSummary& summary, const std::filesystem::path& dir);

/// `evolve` subcommand: one discrete run on the finest grid with conservation diagnostics.
struct EvolveReport {
  std::string config_hash;
  std::string canonical_config;
  std::size_t points = 0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  std::vector<DiagnosticsRow> diagnostics;
  std::optional<LatticeField> final_state;
  std::vector<CheckResult> checks;
};
EvolveReport run_evolve(const ExperimentConfig& config);
void write_evolve(const EvolveReport& report, const std::filesystem::path& dir);

}  // namespace dnls
