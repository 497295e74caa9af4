#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "dnls/analysis.hpp"
#include "dnls/errors.hpp"
#include "dnls/harness.hpp"
#include "text.hpp"

namespace dnls {

namespace {

std::vector<double> log_uniform(double lo, double hi, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    t[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
  }
  return t;
}

bool is_dyadic(double N) {
  int e = 0;
  return std::frexp(N, &e) == 0.5;
}

}  // namespace

KernelReport run_kernel_study(const ExperimentConfig& cfg) {
  for (double a : cfg.kernel_alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw ConfigError("kernel_alphas: alpha must lie in (0, 1]");
    if (a == 0.5) throw ConfigError("kernel_alphas: alpha = 1/2 is excluded");
  }
  for (double N : cfg.kernel_bands) {
    if (!(N > 0.0 && N <= 1.0) || !is_dyadic(N)) {
      throw ConfigError("kernel_bands: N must be a dyadic number in (0, 1]");
    }
  }
  if (!(cfg.kernel_spacing > 0.0)) throw ConfigError("kernel_spacing must be positive");

  KernelReport report;
  report.config_hash = cfg.hash_hex();
  const double h = cfg.kernel_spacing;
  const LatticeGrid line(1, 8, 8.0 * h);
  const std::vector<double> times = log_uniform(cfg.kernel_t_min, cfg.kernel_t_max, cfg.kernel_samples);
  const double c_bound = band_psi_integral() / (2.0 * std::numbers::pi) + 0.01;

  for (double alpha : cfg.kernel_alphas) {
    for (double N : cfg.kernel_bands) {
      KernelSeries series;
      series.alpha = alpha;
      series.N = N;
      series.h = h;
      series.t = times;
      const auto xi0 = stationary_point(alpha, line);
      series.resonant = xi0 && h * *xi0 >= 0.5 * N && h * *xi0 <= 2.0 * N;
      series.expected_exponent = series.resonant ? -1.0 / 3.0 : -0.5;

      std::vector<KernelSup> sups(times.size());
      std::atomic<std::size_t> next{0};
      const std::size_t threads =
          std::min<std::size_t>(times.size(), static_cast<std::size_t>(std::max(1, cfg.workers)));
      auto work = [&] {
        for (std::size_t i = next++; i < times.size(); i = next++) {
          sups[i] = kernel_sup(N, times[i], h, alpha);
        }
      };
      if (threads <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
      }

      double worst_bound = 0.0, worst_routes = 0.0;
      for (const auto& s : sups) {
        series.x_at_sup.push_back(s.x_at_sup);
        series.value_at_sup.push_back(s.value);
        series.sup.push_back(s.sup);
        series.lattice_estimate.push_back(s.lattice_estimate);
        worst_bound = std::max(worst_bound, s.sup / (N / h));
        worst_routes = std::max(worst_routes, std::abs(s.sup - s.lattice_estimate) / (N / h));
      }
      const std::string tag = "alpha=" + detail::short_num(alpha) + "_N=" + detail::short_num(N);
      if (times.size() >= 8) {
        const DecayFit fit = decay_fit(series.t, series.sup);
        series.exponent = fit.exponent;
        series.prefactor = fit.prefactor;
        series.residual = fit.residual;
        const double miss = std::abs(fit.exponent - series.expected_exponent);
        report.checks.push_back({"kernel_exponent_" + tag, miss <= 0.07, fit.exponent,
                                 series.expected_exponent, "tolerance 0.07"});
      }
      report.checks.push_back({"kernel_trivial_bound_" + tag, worst_bound <= c_bound, worst_bound,
                               c_bound, "sup |K| / (N/h)"});
      report.checks.push_back({"kernel_route_agreement_" + tag, worst_routes <= 1e-6, worst_routes,
                               1e-6, "quadrature vs FFT at the maximizing site, per N/h"});
      report.series.push_back(std::move(series));
    }
  }
  return report;
}

}  // namespace dnls
