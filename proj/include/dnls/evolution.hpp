#pragma once

#include <span>
#include <string>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/lattice.hpp"
#include "dnls/transfer.hpp"

namespace dnls {

/// Parameters of i u_t = (-Delta)^alpha u + lambda |u|^{p-1} u (lattice or continuum).
struct EvolutionParams {
  double alpha = 1.0;
  double p = 3.0;
  double lambda = 0.0;
  double dt = 1e-3;
  double horizon = 1.0;
  /// Skip the admissibility windows (the blow-up guard stays active).
  bool unsafe = false;

  /// Throws ParameterError for alpha outside (0, 1] or alpha = 1/2, p <= 1, dt <= 0,
  /// horizon <= 0, and (unless unsafe) for (dim, alpha, p, lambda) outside the well-posedness
  /// windows. lambda = 0 is the linear flow and is always admissible.
  void validate(int dim) const;
  /// True when (dim, alpha, p, lambda) lie inside the windows.
  bool admissible(int dim) const noexcept;
};

struct ConservedQuantities {
  double mass = 0.0;
  double energy = 0.0;
};

/// Snapshots u(t_k) of one run, all on the same grid. times[0] = 0 and the times are strictly
/// monotone (decreasing for a backward run).
struct Trajectory {
  EvolutionParams params;
  std::vector<double> times;
  std::vector<LatticeField> snapshots;
  /// boundary_decay_ratio() of each snapshot; filled by continuum_reference only.
  std::vector<double> boundary_ratios;
};

/// Frequency-wise multiplication by exp(-i t sigma(xi)).
LatticeField linear_propagate(const LatticeField& f, double t, const DispersionSymbol& s);
ContinuumField linear_propagate(const ContinuumField& f, double t, const DispersionSymbol& s);

/// Pointwise u -> exp(-i lambda |u|^{p-1} dt) u, the exact flow of i u_t = lambda |u|^{p-1} u.
LatticeField nonlinear_phase_step(const LatticeField& f, double dt, double p, double lambda);

/// Strang splitting (half nonlinear phase, exact linear step, half nonlinear phase) from
/// t = 0 through `snapshot_times`, which must start at 0 and be strictly monotone. The step
/// size |params.dt| is used in the direction of the times; the last step before each snapshot
/// is shortened to land on it exactly.
///
/// Throws DivergenceError (with the step index) on NaN/Inf or once ||u||_inf exceeds 1e8.
Trajectory evolve(const LatticeField& u0, const EvolutionParams& params,
                  const DispersionSymbol& s, std::span<const double> snapshot_times);

/// Mass ||u||^2 and energy 1/2 ||(-Delta)^{alpha/2} u||^2 + lambda/(p+1) ||u||_{p+1}^{p+1}, the
/// first term taken with the symbol of `kind`.
ConservedQuantities conserved(const LatticeField& f, const EvolutionParams& params,
                              SymbolKind kind = SymbolKind::kDiscrete);

/// The splitting with the continuum symbol on u0's reference grid, standing in for the
/// continuum solution.
///
/// Requires the spectral tail of u0 above |xi| = pi / (4 h_ref) to carry at most 1e-12 of its
/// mass (ParameterError otherwise) and u0 to pass the boundary-decay check
/// (DomainTruncationError). Later snapshots only record their boundary ratios: fractional flows
/// develop algebraic tails that no box keeps below the threshold.
Trajectory continuum_reference(const ContinuumField& u0, const EvolutionParams& params,
                               std::span<const double> snapshot_times);

/// One row per snapshot: t, mass, energy, ||u||_inf, ||u||_{H_h^alpha}.
struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double linf_norm = 0.0;
  double h_alpha_norm = 0.0;
};
std::vector<DiagnosticsRow> diagnostics(const Trajectory& traj,
                                        SymbolKind kind = SymbolKind::kDiscrete);

/// Largest relative mass deviation from the first snapshot.
double mass_drift(const Trajectory& traj);
/// max_k |E(t_k) - E(t_0)|.
double energy_drift(const Trajectory& traj, SymbolKind kind = SymbolKind::kDiscrete);

/// Upper bound on ||(-Delta_h)^{1/2} u||_{L_h^2} for d = 1, alpha = 1, lambda < 0, p < 5, from the
/// mass and energy alone:
///   ||u||_inf^2 <= M/L + sqrt(M) K  and  K^2 <= 2E + 2|lambda|/(p+1) M ||u||_inf^{p-1}.
/// Returns the largest K compatible with both. Throws ParameterError outside that case.
double focusing_gradient_bound(const ConservedQuantities& q, const EvolutionParams& params,
                               double box_length);

/// times_k = k * horizon / count for k = 0..count.
std::vector<double> uniform_times(double horizon, std::size_t count);

/// Runs forward over [0, T] and backward over [-T, 0] and merges them into one trajectory with
/// increasing times on [-T, T].
Trajectory evolve_symmetric(const LatticeField& u0, const EvolutionParams& params,
                            const DispersionSymbol& s, double T, std::size_t snapshots_per_side);

}  // namespace dnls
