#include "dnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"

namespace dnls {

namespace {

constexpr double kBlowupGuard = 1e8;

double box_volume(const LatticeGrid& g) { return std::pow(g.box_length(), g.dim()); }

// |u|^{p-1} without pow for the common odd-integer powers.
double power_weight(Complex u, double p) {
  const double a2 = std::norm(u);
  if (p == 3.0) return a2;
  if (p == 5.0) return a2 * a2;
  if (a2 == 0.0) return 0.0;
  return std::pow(a2, 0.5 * (p - 1.0));
}

void phase_in_place(std::vector<Complex>& u, double tau, double p, double lambda) {
  if (tau == 0.0 || lambda == 0.0) return;
  for (auto& v : u) {
    const double theta = -lambda * power_weight(v, p) * tau;
    v *= Complex(std::cos(theta), std::sin(theta));
  }
}

std::vector<double> symbol_table(const LatticeGrid& g, const DispersionSymbol& s) {
  std::vector<double> sigma(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) sigma[k] = s(g.frequency(k), g.spacing());
  return sigma;
}

std::vector<Complex> propagator_table(const std::vector<double>& sigma, double tau) {
  std::vector<Complex> m(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    m[k] = Complex(std::cos(tau * sigma[k]), -std::sin(tau * sigma[k]));
  }
  return m;
}

void check_times(std::span<const double> times) {
  if (times.empty() || times[0] != 0.0) {
    throw ParameterError("snapshot times must start at 0");
  }
  if (times.size() < 2) return;
  const double dir = times[1] > times[0] ? 1.0 : -1.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(dir * (times[i] - times[i - 1]) > 0.0)) {
      throw ParameterError("snapshot times must be strictly monotone");
    }
  }
}

}  // namespace

bool EvolutionParams::admissible(int dim) const noexcept {
  if (lambda == 0.0) return true;
  const double inv_p = 1.0 / p;
  if (!(inv_p < 1.0)) return false;
  if (alpha == 1.0) {
    if (dim < 1 || dim > 3) return false;
    if (lambda > 0.0) return inv_p > std::max((dim - 2.0) / (dim + 2.0), 0.0);
    return inv_p > dim / (dim + 4.0);
  }
  if (dim != 1 || !(alpha > 1.0 / 3.0 && alpha < 1.0)) return false;
  if (lambda > 0.0) return inv_p > std::max((1.0 - 2.0 * alpha) / (1.0 + 2.0 * alpha), 0.0);
  return inv_p > 1.0 / (1.0 + 4.0 * alpha);
}

void EvolutionParams::validate(int dim) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (alpha == 0.5) throw ParameterError("alpha = 1/2 is excluded");
  if (!(p > 1.0)) throw ParameterError("nonlinearity power p must exceed 1");
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("horizon must be positive");
  if (dim < 1 || dim > 3) throw ParameterError("dimension must be 1, 2 or 3");
  if (!unsafe && !admissible(dim)) {
    throw ParameterError("(d, alpha, p, lambda) = (" + std::to_string(dim) + ", " +
                         std::to_string(alpha) + ", " + std::to_string(p) + ", " +
                         std::to_string(lambda) +
                         ") lies outside the well-posedness windows; pass the unsafe override "
                         "to run anyway");
  }
}

LatticeField linear_propagate(const LatticeField& f, double t, const DispersionSymbol& s) {
  if (t == 0.0) return f;
  const auto& g = f.grid();
  const double h = g.spacing();
  return apply_multiplier(f, [&](const Vec3& xi) {
    const double phase = t * s(xi, h);
    return Complex(std::cos(phase), -std::sin(phase));
  });
}

ContinuumField linear_propagate(const ContinuumField& f, double t, const DispersionSymbol& s) {
  SpectralField F = f.spectrum();
  const auto& g = F.grid();
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double phase = t * s(g.frequency(k), g.spacing());
    F[k] *= Complex(std::cos(phase), -std::sin(phase));
  }
  return ContinuumField(std::move(F));
}

LatticeField nonlinear_phase_step(const LatticeField& f, double dt, double p, double lambda) {
  LatticeField out = f;
  phase_in_place(out.values(), dt, p, lambda);
  return out;
}

Trajectory evolve(const LatticeField& u0, const EvolutionParams& params,
                  const DispersionSymbol& s, std::span<const double> snapshot_times) {
  check_times(snapshot_times);
  const auto& g = u0.grid();
  const std::vector<double> sigma = symbol_table(g, s);
  const FftPlan forward(g, FftPlan::Direction::kForward);
  const FftPlan backward(g, FftPlan::Direction::kBackward);
  const double inv_size = 1.0 / static_cast<double>(g.size());
  const double step = std::abs(params.dt);
  if (!(step > 0.0)) throw ParameterError("time step must be nonzero");

  Trajectory traj;
  traj.params = params;
  traj.times.assign(snapshot_times.begin(), snapshot_times.end());
  traj.snapshots.reserve(snapshot_times.size());
  traj.snapshots.push_back(u0);

  std::vector<Complex> u = u0.values();
  std::vector<Complex> full_step;
  double full_tau = 0.0;
  std::size_t step_index = 0;

  auto strang = [&](double tau, const std::vector<Complex>& prop) {
    phase_in_place(u, 0.5 * tau, params.p, params.lambda);
    forward.execute(u, u);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] *= prop[k] * inv_size;
    backward.execute(u, u);
    phase_in_place(u, 0.5 * tau, params.p, params.lambda);
    ++step_index;
    double sup = 0.0;
    for (const auto& v : u) {
      const double a = std::abs(v);
      if (!std::isfinite(a)) {
        throw DivergenceError("non-finite value at step " + std::to_string(step_index),
                              step_index);
      }
      sup = std::max(sup, a);
    }
    if (sup > kBlowupGuard) {
      throw DivergenceError("sup norm exceeded the blow-up guard at step " +
                                std::to_string(step_index),
                            step_index);
    }
  };

  double t = 0.0;
  for (std::size_t i = 1; i < snapshot_times.size(); ++i) {
    const double target = snapshot_times[i];
    const double dir = target > t ? 1.0 : -1.0;
    const double tau = dir * step;
    if (full_step.empty() || full_tau != tau) {
      full_step = propagator_table(sigma, tau);
      full_tau = tau;
    }
    const double span = std::abs(target - t);
    auto whole = static_cast<std::size_t>(std::floor(span / step));
    // Absorb a remainder at roundoff level into the last whole step.
    double rest = span - static_cast<double>(whole) * step;
    if (rest < 1e-9 * step && whole > 0) {
      --whole;
      rest += step;
    }
    for (std::size_t n = 0; n < whole; ++n) strang(tau, full_step);
    if (rest > 0.0) {
      if (std::abs(rest - step) <= 1e-9 * step) {
        strang(tau, full_step);
      } else {
        strang(dir * rest, propagator_table(sigma, dir * rest));
      }
    }
    t = target;
    traj.snapshots.emplace_back(g, u);
  }
  return traj;
}

ConservedQuantities conserved(const LatticeField& f, const EvolutionParams& params,
                              SymbolKind kind) {
  const auto& g = f.grid();
  const DispersionSymbol s(params.alpha, kind);
  const SpectralField F = dft(f);
  double kinetic = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) kinetic += s(g.frequency(k), g.spacing()) * std::norm(F[k]);
  kinetic /= box_volume(g);

  ConservedQuantities q;
  const double l2 = lp_norm(f, 2.0);
  q.mass = l2 * l2;
  double potential = 0.0;
  if (params.lambda != 0.0) {
    const double n = lp_norm(f, params.p + 1.0);
    potential = params.lambda / (params.p + 1.0) * std::pow(n, params.p + 1.0);
  }
  q.energy = 0.5 * kinetic + potential;
  return q;
}

Trajectory continuum_reference(const ContinuumField& u0, const EvolutionParams& params,
                               std::span<const double> snapshot_times) {
  const auto& g = u0.reference_grid();
  const double cutoff = std::numbers::pi / (4.0 * g.spacing());
  const double tail = u0.spectral_tail_fraction(cutoff);
  if (tail > 1e-12) {
    throw ParameterError("reference grid too coarse: spectral tail fraction " +
                         std::to_string(tail) + " above |xi| = pi/(4 h_ref)");
  }
  u0.require_boundary_decay();
  const DispersionSymbol s(params.alpha, SymbolKind::kContinuum);
  Trajectory traj = evolve(u0.samples(), params, s, snapshot_times);
  traj.boundary_ratios.reserve(traj.snapshots.size());
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const double r = ContinuumField::from_samples(traj.snapshots[i]).boundary_decay_ratio();
    traj.boundary_ratios.push_back(r);
    if (i > 0 && r > 1e-10) {
      spdlog::debug("reference snapshot t={} has boundary ratio {:.3e}", traj.times[i], r);
    }
  }
  return traj;
}

std::vector<DiagnosticsRow> diagnostics(const Trajectory& traj, SymbolKind kind) {
  std::vector<DiagnosticsRow> rows;
  rows.reserve(traj.snapshots.size());
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const auto& u = traj.snapshots[i];
    const ConservedQuantities q = conserved(u, traj.params, kind);
    rows.push_back({traj.times[i], q.mass, q.energy, lp_norm(u, kInfinity),
                    sobolev_norm(u, traj.params.alpha, false)});
  }
  return rows;
}

double mass_drift(const Trajectory& traj) {
  if (traj.snapshots.empty()) return 0.0;
  const double m0 = std::pow(lp_norm(traj.snapshots.front(), 2.0), 2);
  if (m0 == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& u : traj.snapshots) {
    worst = std::max(worst, std::abs(std::pow(lp_norm(u, 2.0), 2) - m0) / m0);
  }
  return worst;
}

double energy_drift(const Trajectory& traj, SymbolKind kind) {
  if (traj.snapshots.empty()) return 0.0;
  const double e0 = conserved(traj.snapshots.front(), traj.params, kind).energy;
  double worst = 0.0;
  for (const auto& u : traj.snapshots) {
    worst = std::max(worst, std::abs(conserved(u, traj.params, kind).energy - e0));
  }
  return worst;
}

double focusing_gradient_bound(const ConservedQuantities& q, const EvolutionParams& params,
                               double box_length) {
  if (params.alpha != 1.0 || !(params.lambda < 0.0) || !(params.p > 1.0 && params.p < 5.0)) {
    throw ParameterError("focusing bound needs alpha = 1, lambda < 0 and 1 < p < 5");
  }
  const double M = q.mass;
  const double c = 2.0 * std::abs(params.lambda) / (params.p + 1.0) * M;
  const double e = 0.5 * (params.p - 1.0);
  auto excess = [&](double K) {
    const double sup2 = M / box_length + std::sqrt(M) * K;
    return K * K - 2.0 * q.energy - c * std::pow(sup2, e);
  };
  // excess(K) > 0 for all large K because the nonlinear term grows like K^{e}, e < 2.
  double hi = 1.0;
  while (excess(hi) <= 0.0) hi *= 2.0;
  double lo = 0.0;
  if (excess(lo) > 0.0) return 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) <= 0.0 ? lo : hi) = mid;
  }
  return hi;
}

std::vector<double> uniform_times(double horizon, std::size_t count) {
  std::vector<double> t(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    t[k] = horizon * static_cast<double>(k) / static_cast<double>(count);
  }
  return t;
}

Trajectory evolve_symmetric(const LatticeField& u0, const EvolutionParams& params,
                            const DispersionSymbol& s, double T, std::size_t snapshots_per_side) {
  const std::vector<double> fwd = uniform_times(T, snapshots_per_side);
  std::vector<double> bwd = fwd;
  for (auto& v : bwd) v = -v;
  Trajectory forward = evolve(u0, params, s, fwd);
  Trajectory backward = evolve(u0, params, s, bwd);
  Trajectory merged;
  merged.params = params;
  for (std::size_t i = backward.times.size(); i-- > 1;) {
    merged.times.push_back(backward.times[i]);
    merged.snapshots.push_back(std::move(backward.snapshots[i]));
  }
  for (std::size_t i = 0; i < forward.times.size(); ++i) {
    merged.times.push_back(forward.times[i]);
    merged.snapshots.push_back(std::move(forward.snapshots[i]));
  }
  return merged;
}

}  // namespace dnls
