// dnls: command-line surface of the experiment harness.
//
//   dnls evolve|converge|kernel|norms <config> [--out DIR] [--seed N] [--workers N] [--unsafe-params]
//   dnls check [--out DIR]
//
// Exit codes: 0 success, 1 runtime error, 2 invariant failure, 3 config error.

#include <cstdio>
#include <optional>
#include <string>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "dnls/errors.hpp"
#include "dnls/harness.hpp"

namespace {

constexpr int kInvariantFailure = 2;
constexpr int kConfigError = 3;

struct Overrides {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool unsafe = false;
};

dnls::ExperimentConfig load_config(const std::string& path, const Overrides& o) {
  auto cfg = dnls::ExperimentConfig::load(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.unsafe) cfg.unsafe_params = true;
  if (!o.out.empty()) cfg.output_dir = o.out;
  cfg.validate();
  return cfg;
}

int report_checks(const std::vector<dnls::CheckResult>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%-4s %-44s value %-12.6g threshold %-12.6g %s\n", c.passed ? "ok" : "FAIL",
                c.name.c_str(), c.value, c.threshold, c.detail.c_str());
    ok = ok && c.passed;
  }
  return ok ? 0 : kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice NLS discretization experiments"};
  app.require_subcommand(1);
  Overrides o;
  std::string config_path;
  std::string fault;
  bool verbose = false;

  app.add_flag("-v,--verbose", verbose, "Debug logging");
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("config", config_path, "Config file")->required();
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Seed override");
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--unsafe-params", o.unsafe, "Skip the well-posedness windows");
  };
  auto* evolve = app.add_subcommand("evolve", "Single run on the finest grid");
  auto* converge = app.add_subcommand("converge", "Convergence sweep over the grid sizes");
  auto* kernel = app.add_subcommand("kernel", "Kernel decay study");
  auto* norms = app.add_subcommand("norms", "Strichartz quotients and phase gap");
  auto* check = app.add_subcommand("check", "Invariant suites");
  for (auto* sub : {evolve, converge, kernel, norms}) add_common(sub, true);
  add_common(check, false);
  check->add_option("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*check) {
      dnls::CheckOptions options;
      options.inject_fault = fault;
      if (o.seed) options.seed = *o.seed;
      const auto summary = dnls::run_checks(options);
      if (!o.out.empty()) dnls::write_checks(summary, o.out);
      return report_checks(summary.checks);
    }
    const auto cfg = load_config(config_path, o);
    const std::filesystem::path dir = cfg.output_dir;
    std::printf("config %s -> %s\n", cfg.hash_hex().c_str(), dir.string().c_str());
    if (*evolve) {
      const auto report = dnls::run_evolve(cfg);
      dnls::write_evolve(report, dir);
      std::printf("M = %zu  mass drift %.3g  energy drift %.3g\n", report.points, report.mass_drift,
                  report.energy_drift);
      return report_checks(report.checks);
    }
    if (*converge) {
      const auto report = dnls::run_convergence(cfg);
      dnls::write_convergence(report, dir);
      for (const auto& f : report.fits) {
        if (f.rate) std::printf("t = %g  rate %.4f  (%zu levels)\n", f.t, *f.rate, f.levels_used);
      }
      for (const auto& flag : report.flags) std::printf("flag: %s\n", flag.c_str());
      return report_checks(report.checks);
    }
    if (*kernel) {
      const auto report = dnls::run_kernel_study(cfg);
      dnls::write_kernel(report, dir);
      for (const auto& s : report.series) {
        std::printf("alpha %g  N %g  exponent %.4f  (expected %.4f)\n", s.alpha, s.N, s.exponent,
                    s.expected_exponent);
      }
      return report_checks(report.checks);
    }
    if (*norms) {
      const auto report = dnls::run_norms(cfg);
      dnls::write_norms(report, dir);
      return report_checks(report.checks);
    }
  } catch (const dnls::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const dnls::ParameterError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
