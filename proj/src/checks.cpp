#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <spdlog/spdlog.h>

#include "dnls/analysis.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/harness.hpp"
#include "dnls/lattice.hpp"
#include "dnls/littlewood_paley.hpp"
#include "dnls/profiles.hpp"
#include "dnls/transfer.hpp"
#include "text.hpp"

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;

double sup_diff(const LatticeField& a, const LatticeField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double relative_diff(const LatticeField& a, const LatticeField& b) {
  const double scale = lp_norm(b, kInfinity);
  return sup_diff(a, b) / (scale > 0.0 ? scale : 1.0);
}

std::vector<LatticeField> mixed_corpus(const LatticeGrid& grid, std::size_t count, std::uint64_t seed) {
  auto corpus = smooth_corpus(grid, count, seed);
  for (auto& f : lattice_corpus(grid, count, seed)) corpus.push_back(std::move(f));
  return corpus;
}

ProfileSpec gaussian(double width = 1.0) {
  ProfileSpec spec;
  spec.width = width;
  return spec;
}

class Suite {
 public:
  explicit Suite(std::vector<CheckResult>& out) : out_(out) {}

  // Records the check; errors thrown while measuring count as failures.
  void run(const std::string& name, const std::function<CheckResult()>& body) {
    CheckResult r;
    try {
      r = body();
    } catch (const Error& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.name = name;
    spdlog::debug("check {}: {} (value {}, threshold {})", name, r.passed ? "pass" : "FAIL", r.value,
                  r.threshold);
    out_.push_back(std::move(r));
  }

 private:
  std::vector<CheckResult>& out_;
};

CheckResult at_most(double value, double threshold, std::string detail = {}) {
  return {{}, value <= threshold, value, threshold, std::move(detail)};
}

CheckResult at_least(double value, double threshold, std::string detail = {}) {
  return {{}, value >= threshold, value, threshold, std::move(detail)};
}

// Lattice core.

void lattice_checks(Suite& suite, const CheckOptions& opt) {
  const LatticeGrid g1(1, 256, 32.0);
  const LatticeGrid g2(2, 32, 16.0);
  std::vector<LatticeField> fields = mixed_corpus(g1, 10, opt.seed);
  for (auto& f : mixed_corpus(g2, 5, opt.seed)) fields.push_back(std::move(f));

  suite.run("plancherel", [&] {
    const double weight = opt.inject_fault == "plancherel" ? 1.0 + 1e-6 : 1.0;
    double worst = 0.0;
    for (const auto& f : fields) {
      const double lhs = std::pow(lp_norm(f, 2.0), 2);
      worst = std::max(worst, std::abs(lhs - weight * dft(f).spectral_mass()) / lhs);
    }
    return at_most(worst, 1e-10, "relative, mixed 1d/2d corpus");
  });

  suite.run("round_trip", [&] {
    double worst = 0.0;
    for (const auto& f : fields) worst = std::max(worst, relative_diff(idft(dft(f)), f));
    return at_most(worst, 1e-12);
  });

  suite.run("multiplier_semigroup", [&] {
    const DispersionSymbol s(0.25, SymbolKind::kDiscrete);
    double worst = 0.0;
    for (const auto& f : fields) {
      const LatticeField twice = apply_symbol(apply_symbol(f, s, 1.0), s, 1.0);
      const LatticeField once = apply_symbol(f, s, 2.0);
      worst = std::max(worst, relative_diff(twice, once));
    }
    return at_most(worst, 1e-11, "alpha 0.25 symbol, powers 1 + 1 vs 2");
  });

  suite.run("littlewood_paley_partition", [&] {
    double worst = 0.0;
    for (const auto& f : fields) {
      LatticeField sum(f.grid());
      for (const auto& band : littlewood_paley_bands(f.grid())) sum += lp_project(f, band);
      worst = std::max(worst, relative_diff(sum, f));
    }
    return at_most(worst, 1e-12);
  });

  suite.run("square_function_bracket", [&] {
    // Nonnegative multipliers summing to 1 with at most two overlapping: sum m^2 in [1/2, 1].
    double lo = kInfinity, hi = 0.0;
    for (const auto& f : fields) {
      const double ratio = square_function_norm(f) / lp_norm(f, 2.0);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const bool ok = lo >= std::sqrt(0.5) - 1e-12 && hi <= 1.0 + 1e-12;
    return CheckResult{{}, ok, lo, std::sqrt(0.5), "max ratio " + detail::short_num(hi)};
  });

  suite.run("frequency_support_bound", [&] {
    double worst = 0.0;
    for (const auto& f : fields) {
      const int d = f.grid().dim();
      const double top = kPi * std::sqrt(static_cast<double>(d)) / f.grid().spacing();
      for (double s : {0.0, 0.3, 0.7}) {
        const double lhs = sobolev_norm(f, 1.0, true);
        const double rhs = std::pow(top, 1.0 - s) * sobolev_norm(f, s, true);
        worst = std::max(worst, lhs / rhs);
      }
    }
    return at_most(worst, 1.0 + 1e-12, "||f||_H1 / ((pi sqrt d / h)^{1-s} ||f||_Hs)");
  });

  suite.run("difference_gradient_bracket", [&] {
    double lo = kInfinity, hi = 0.0, worst = 0.0;
    for (int d : {1, 2}) {
      for (std::size_t M : {16, 32, 64}) {
        const LatticeGrid grid(d, d == 1 ? 8 * M : M, 16.0);
        for (const auto& f : mixed_corpus(grid, 4, opt.seed)) {
          double sum = 0.0;
          for (int j = 0; j < d; ++j) sum += lp_norm(discrete_gradient(f, j), 2.0);
          const double ratio = sum / sobolev_norm(f, 1.0, true);
          const double lower = 2.0 / (kPi * std::sqrt(static_cast<double>(d)));
          const double upper = std::sqrt(static_cast<double>(d));
          lo = std::min(lo, ratio / lower);
          hi = std::max(hi, ratio / upper);
          worst = std::max({worst, lower / ratio, ratio / upper});
        }
      }
    }
    return CheckResult{{}, worst <= 1.0 + 1e-12, worst, 1.0,
                       "min ratio/lower " + detail::short_num(lo) + ", max ratio/upper " + detail::short_num(hi)};
  });

  suite.run("gagliardo_nirenberg_stability", [&] {
    struct Probe {
      double q, theta;
    };
    const Probe probes[] = {{kInfinity, 0.5}, {4.0, 0.25}};
    double worst = 0.0;
    for (const auto& probe : probes) {
      double previous = 0.0;
      for (std::size_t M : {128, 256, 512, 1024}) {
        const LatticeGrid grid(1, M, 32.0);
        double cmax = 0.0;
        for (const auto& f : mixed_corpus(grid, 10, opt.seed)) {
          const double denom = std::pow(lp_norm(f, 2.0), 1.0 - probe.theta) *
                               std::pow(sobolev_norm(f, 1.0, true), probe.theta);
          cmax = std::max(cmax, lp_norm(f, probe.q) / denom);
        }
        if (previous > 0.0) worst = std::max(worst, cmax / previous);
        previous = cmax;
      }
    }
    return at_most(worst, 1.05, "p = 2, s = 1, (q, theta) in {(inf, 1/2), (4, 1/4)}; max-C ratio under h-halving");
  });

  suite.run("admissible_pairs", [&] {
    using K = AdmissiblePair::Kind;
    int wrong = 0;
    wrong += !AdmissiblePair{4.0, kInfinity, K::kStandard}.is_admissible(1);
    wrong += !AdmissiblePair{6.0, kInfinity, K::kResonance}.is_admissible(1);
    wrong += AdmissiblePair{2.0, kInfinity, K::kStandard}.is_admissible(2);
    wrong += AdmissiblePair{2.0, kInfinity, K::kResonance}.is_admissible(3);
    wrong += AdmissiblePair{5.0, kInfinity, K::kStandard}.is_admissible(1);
    return at_most(wrong, 0.0, "misclassified pairs");
  });

  suite.run("qstar_branches", [&] {
    double worst = 0.0;
    worst = std::max(worst, std::isinf(qstar(1, 0.75, 0.1)) ? 0.0 : 1.0);
    worst = std::max(worst, std::abs(qstar(3, 1.0, 0.1) - 4.0 / 1.1));
    worst = std::max(worst, std::abs(qstar(1, 0.4, 0.1) - 1.6 / 0.3));
    return at_most(worst, 1e-12);
  });
}

// Transfer operators.

void transfer_checks(Suite& suite, const CheckOptions& opt) {
  suite.run("constants_preserved", [&] {
    const LatticeGrid ref(1, 512, 32.0);
    LatticeField c(ref);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(0.7, -0.2);
    const ContinuumField f = ContinuumField::from_samples(c);
    const LatticeField fh = discretize(f, LatticeGrid(1, 64, 32.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < fh.size(); ++i) worst = std::max(worst, std::abs(fh[i] - c[0]));
    const InterpolantField p = interpolate(fh);
    for (double x : {0.1, 3.3, 17.77, 31.9}) worst = std::max(worst, std::abs(p.evaluate({x, 0, 0}) - c[0]));
    return at_most(worst, 1e-13);
  });

  suite.run("interpolant_symbol_identity", [&] {
    const LatticeGrid grid(1, 64, 32.0);
    std::mt19937_64 rng(opt.seed + 11);
    std::uniform_int_distribution<long> k(-192, 192);
    std::vector<Vec3> probes;
    for (int i = 0; i < 100; ++i) probes.push_back({2.0 * kPi * static_cast<double>(k(rng)) / 32.0, 0, 0});
    double worst = 0.0;
    for (const auto& f : mixed_corpus(grid, 25, opt.seed)) {
      worst = std::max(worst, interpolant_transform_check(f, probes));
    }
    return at_most(worst, 1e-8, "50 fields, 100 dual-lattice probes incl. aliases");
  });

  suite.run("interpolation_symbol_closed_form", [&] {
    // p_h of a unit-mass spike is the interpolation kernel, so its transform is P_h itself.
    double worst = 0.0;
    for (int d : {1, 2}) {
      const LatticeGrid grid(d, 16, 8.0);
      const double h = grid.spacing();
      LatticeField spike(grid);
      const Index3 mid{8, d > 1 ? 8u : 0u, 0};
      const std::size_t at = grid.ravel(mid);
      spike[at] = 1.0 / std::pow(h, d);
      const InterpolantField p = interpolate(spike);
      const Vec3 x0 = grid.position(at);
      std::mt19937_64 rng(opt.seed + 13);
      std::uniform_real_distribution<double> u(-4.0 * kPi / h, 4.0 * kPi / h);
      for (int i = 0; i < 100; ++i) {
        Vec3 xi{0, 0, 0};
        for (int j = 0; j < d; ++j) xi[j] = u(rng);
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += xi[j] * x0[j];
        const Complex ft = interpolant_fourier_transform(p, xi) * std::polar(1.0, phase);
        const Complex closed = interpolation_symbol(grid, xi);
        worst = std::max(worst, std::abs(ft - closed) / std::max(std::abs(closed), 1e-3));
      }
    }
    return at_most(worst, 1e-10, "spike-transform route, 100 random frequencies per dimension");
  });

  suite.run("interpolation_rate", [&] {
    const LatticeGrid ref(1, 4096, 32.0);
    const ContinuumField f = ContinuumField::from_samples(sample_profile(gaussian(), ref));
    std::vector<double> hs, ds;
    for (std::size_t M : {64, 128, 256, 512, 1024}) {
      const LatticeGrid grid(1, M, 32.0);
      hs.push_back(grid.spacing());
      ds.push_back(cross_l2_distance(interpolate(discretize(f, grid)), f));
    }
    const double slope = loglog_slope(hs, ds);
    return at_least(slope, 1.0 - 0.05, "||p_h f_h - f|| vs h, Gaussian; bound alpha - 0.05 at alpha = 1");
  });

  suite.run("distributive_defect_constant", [&] {
    // C(h) = max over corpus of defect / (h^alpha ||u||_inf^{p-1} ||u||_{H^alpha}).
    double worst = 0.0;
    std::string notes;
    for (double alpha : {0.75, 1.0}) {
      for (double p : {2.0, 3.0}) {
        std::vector<double> cs;
        for (std::size_t M : {256, 512, 1024}) {
          const LatticeGrid grid(1, M, 32.0);
          const double h = grid.spacing();
          double c = 0.0;
          for (const auto& u : mixed_corpus(grid, 6, opt.seed)) {
            const double scale = std::pow(h, alpha) * std::pow(lp_norm(u, kInfinity), p - 1.0) *
                                 sobolev_norm(u, alpha, false);
            c = std::max(c, distributive_defect(u, p) / scale);
          }
          cs.push_back(c);
        }
        for (std::size_t i = 1; i < cs.size(); ++i) {
          worst = std::max(worst, std::abs(cs[i] / cs[i - 1] - 1.0));
        }
        notes += "alpha " + detail::short_num(alpha) + " p " + detail::short_num(p) + ": C " +
                 detail::short_num(cs.front()) + "; ";
      }
    }
    return at_most(worst, 0.10, notes + "relative change under h-halving");
  });
}

// Evolution.

EvolutionParams nls(double alpha, double lambda, double dt, double horizon = 1.0) {
  EvolutionParams params;
  params.alpha = alpha;
  params.p = 3.0;
  params.lambda = lambda;
  params.dt = dt;
  params.horizon = horizon;
  return params;
}

std::vector<LatticeField> standard_corpus(const LatticeGrid& grid, std::uint64_t seed) {
  std::vector<LatticeField> corpus;
  corpus.push_back(sample_profile(gaussian(), grid));
  ProfileSpec bumps;
  bumps.kind = ProfileSpec::Kind::kMultiBump;
  corpus.push_back(sample_profile(bumps, grid));
  for (auto& f : smooth_corpus(grid, 2, seed)) corpus.push_back(std::move(f));
  return corpus;
}

void evolution_checks(Suite& suite, const CheckOptions& opt) {
  const LatticeGrid grid(1, 256, 32.0);
  const auto corpus = standard_corpus(grid, opt.seed);
  const std::vector<double> times = uniform_times(1.0, 4);

  suite.run("mass_conservation", [&] {
    double worst = 0.0;
    for (double alpha : {0.6, 0.75, 1.0}) {
      const DispersionSymbol s(alpha, SymbolKind::kDiscrete);
      for (const auto& u0 : corpus) {
        worst = std::max(worst, mass_drift(evolve(u0, nls(alpha, 1.0, 1e-3), s, times)));
      }
    }
    return at_most(worst, 1e-11, "relative, T = 1");
  });

  suite.run("energy_drift_order", [&] {
    const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
    double lo = kInfinity, hi = 0.0;
    for (const auto& u0 : corpus) {
      const double coarse = energy_drift(evolve(u0, nls(1.0, 1.0, 0.02), s, times));
      const double fine = energy_drift(evolve(u0, nls(1.0, 1.0, 0.01), s, times));
      lo = std::min(lo, coarse / fine);
      hi = std::max(hi, coarse / fine);
    }
    return CheckResult{{}, lo >= 3.0 && hi <= 5.0, lo, 3.0,
                       "drift(dt)/drift(dt/2), dt = 0.02; max " + detail::short_num(hi)};
  });

  suite.run("time_reversibility", [&] {
    const DispersionSymbol s(0.75, SymbolKind::kDiscrete);
    const std::vector<double> back{0.0, -1.0};
    double worst = 0.0;
    for (const auto& u0 : corpus) {
      const auto params = nls(0.75, 1.0, 1e-3);
      const Trajectory fwd = evolve(u0, params, s, times);
      const Trajectory bwd = evolve(fwd.snapshots.back(), params, s, back);
      worst = std::max(worst, relative_diff(bwd.snapshots.back(), u0));
    }
    return at_most(worst, 1e-9, "forward to T = 1 then back");
  });

  suite.run("linear_reduction", [&] {
    const DispersionSymbol s(0.75, SymbolKind::kDiscrete);
    double worst = 0.0;
    for (const auto& u0 : corpus) {
      const Trajectory traj = evolve(u0, nls(0.75, 0.0, 1e-3), s, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        worst = std::max(worst, relative_diff(traj.snapshots[k], linear_propagate(u0, times[k], s)));
      }
    }
    return at_most(worst, 1e-12, "lambda = 0 against the exact propagator");
  });

  suite.run("uniform_linf_shape", [&] {
    // For q_* = inf the bound is T-independent: c = max_T ||u||_{L^inf([-T,T]; L^inf)} / ||u0||_{H^alpha}.
    double worst = 0.0;
    std::string notes;
    for (double alpha : {0.75, 1.0}) {
      std::vector<double> cs;
      const double q = qstar(1, alpha, 0.1);
      for (std::size_t M : {128, 256}) {
        const LatticeGrid g(1, M, 32.0);
        double c = 0.0;
        for (const auto& u0 : standard_corpus(g, opt.seed)) {
          const DispersionSymbol s(alpha, SymbolKind::kDiscrete);
          const Trajectory traj = evolve_symmetric(u0, nls(alpha, 1.0, 1e-3, 8.0), s, 8.0, 256);
          const double norm0 = sobolev_norm(u0, alpha, false);
          for (double T : {1.0, 2.0, 4.0, 8.0}) {
            Trajectory window;
            window.params = traj.params;
            for (std::size_t k = 0; k < traj.times.size(); ++k) {
              if (std::abs(traj.times[k]) <= T + 1e-12) {
                window.times.push_back(traj.times[k]);
                window.snapshots.push_back(traj.snapshots[k]);
              }
            }
            const double bracket = std::pow(1.0 + T * T, 0.5 / q);
            c = std::max(c, spacetime_norm(window, q, kInfinity) / (bracket * norm0));
          }
        }
        cs.push_back(c);
      }
      worst = std::max(worst, std::abs(cs[1] / cs[0] - 1.0));
      notes += "alpha " + detail::short_num(alpha) + ": c " + detail::short_num(cs[0]) + "; ";
    }
    return at_most(worst, 0.20, notes + "relative change under h-halving");
  });

  suite.run("focusing_gradient_bound", [&] {
    const LatticeGrid g(1, 256, 32.0);
    const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
    const auto params = nls(1.0, -1.0, 1e-3);
    const LatticeField u0 = sample_profile(gaussian(), g);
    const double bound = focusing_gradient_bound(conserved(u0, params), params, 32.0);
    double worst = 0.0;
    for (const auto& u : evolve(u0, params, s, uniform_times(1.0, 8)).snapshots) {
      worst = std::max(worst, lp_norm(apply_symbol(u, s, 0.5), 2.0) / bound);
    }
    return at_most(worst, 1.0, "||(-Delta_h)^{1/2} u(t)|| / bound, lambda = -1, p = 3");
  });
}

// Analysis.

void analysis_checks(Suite& suite) {
  suite.run("phase_gap_bound", [&] {
    double worst = 0.0;
    for (double alpha : {0.6, 0.75, 1.0}) {
      for (std::size_t M : {64, 128, 256, 512, 1024}) {
        worst = std::max(worst, max_phase_gap_ratio(LatticeGrid(1, M, 32.0), alpha, 1.0));
      }
    }
    return at_most(worst, 2.0, "gap / (|t| h^2 |xi|^{2 alpha + 2}), t = 1");
  });

  suite.run("kernel_trivial_bound", [&] {
    const double h = 1.0 / 8.0;
    const double c = band_psi_integral() / (2.0 * kPi) + 0.01;
    double worst = 0.0;
    for (double alpha : {0.3, 0.75, 1.0}) {
      for (double N : {1.0, 0.5}) {
        for (double t : {0.0, 0.5, 3.0, 20.0}) {
          worst = std::max(worst, kernel_sup(N, t, h, alpha).sup / (N / h));
        }
      }
    }
    return at_most(worst, c, "sup |K_{N,t}| / (N/h)");
  });

  suite.run("nonresonant_hessian", [&] {
    // |sigma''| / (h^{2-2a} / N^{2-2a}) over the band support, alpha = 0.3.
    const double alpha = 0.3;
    double lo = kInfinity;
    for (double h : {1.0, 1.0 / 8.0, 1.0 / 32.0}) {
      for (double N : {1.0, 0.5, 0.25}) {
        const double a = 0.5 * N / h;
        const double b = std::min(2.0 * N / h, kPi / h);
        for (int i = 0; i <= 400; ++i) {
          const double xi = a + (b - a) * i / 400.0;
          const double scale = std::pow(h, 2.0 - 2.0 * alpha) / std::pow(N, 2.0 - 2.0 * alpha);
          lo = std::min(lo, std::abs(symbol_second_derivative(alpha, h, xi)) / scale);
        }
      }
    }
    return CheckResult{{}, lo > 0.0 && std::isfinite(lo), lo, 0.0, "minimum over band, h and N"};
  });
}

}  // namespace

CheckSummary run_checks(const CheckOptions& options) {
  CheckSummary summary;
  Suite suite(summary.checks);
  lattice_checks(suite, options);
  transfer_checks(suite, options);
  evolution_checks(suite, options);
  analysis_checks(suite);
  return summary;
}

}  // namespace dnls
