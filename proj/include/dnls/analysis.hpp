#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dnls/evolution.hpp"
#include "dnls/field.hpp"
#include "dnls/grid.hpp"
#include "dnls/transfer.hpp"

namespace dnls {

/// Space-time exponent pair. r = kInfinity is allowed.
struct AdmissiblePair {
  enum class Kind { kStandard, kResonance };
  double q = 2.0;
  double r = kInfinity;
  Kind kind = Kind::kStandard;

  /// standard:  2/q + d/r = d/2, (q, r, d) != (2, inf, 2);
  /// resonance: 3/q + d/r = d/2, (q, r, d) != (2, inf, 3); both with 2 <= q, r <= inf.
  bool is_admissible(int dim) const noexcept;
};

/// One value of the frequency-localized kernel K_{N,t}(x) = (1/2 pi) int e^{i(x xi - t sigma_h)}
/// psi(h xi / N) d xi over [-pi/h, pi/h] (d = 1, whole lattice hZ).
struct KernelSample {
  double N = 1.0;
  double h = 1.0;
  double alpha = 1.0;
  double t = 0.0;
  double x = 0.0;
  Complex value;
};

/// Adaptive composite Gauss-Legendre evaluation of K_{N,t}(x). Panel count scales with the
/// total phase variation over the band; the panel count doubles until two successive results
/// agree to `tolerance` relative to the trivial bound (N/h) int psi / (2 pi). Throws
/// AccuracyError (carrying the last difference) after `max_doublings`.
Complex kernel_eval(double N, double t, const LatticeGrid& grid, double alpha, double x,
                    double tolerance = 1e-8, int max_doublings = 8);

/// Same integral by the trapezoidal rule on `points` equispaced frequencies, which is an FFT:
/// returns K at the sites x_m = h m, m in [-points/2, points/2). Aliasing from sites
/// |x| > points h / 2 is negligible once the window contains the group-velocity cone.
std::vector<Complex> kernel_on_lattice(double N, double t, double h, double alpha,
                                       std::size_t points);

/// max |sigma_h'(xi)| over the band N/2 <= h |xi| <= 2N.
double band_group_velocity(double N, double h, double alpha);

struct KernelSup {
  double t = 0.0;
  double x_at_sup = 0.0;
  double sup = 0.0;               // |quadrature value| at the maximizing site
  Complex value;                  // quadrature value there
  double lattice_estimate = 0.0;  // |FFT value| at the same site
  int candidates = 0;
};

/// sup_x |K_{N,t}(x)| over lattice sites |x| <= 4 t v_max + 64 h: candidates from the FFT route,
/// the best `refine` of them re-evaluated with kernel_eval.
KernelSup kernel_sup(double N, double t, double h, double alpha, int refine = 4,
                     double tolerance = 1e-8);

/// int_R psi(u) du (= 3/2 for the fixed bump).
double band_psi_integral();

/// xi_0 = arccos((1 - alpha)/alpha) / h where the lattice phase Hessian degenerates; empty for
/// alpha < 1/2.
std::optional<double> stationary_point(double alpha, const LatticeGrid& grid);

/// d^2 sigma_h / d xi^2 for d = 1.
double symbol_second_derivative(double alpha, double h, double xi);

struct DecayFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;
};

/// Ordinary least squares of log value on log t. Needs >= 8 samples spanning >= 2 decades in t
/// and positive values (ParameterError otherwise).
DecayFit decay_fit(std::span<const double> t, std::span<const double> values);

/// (integral of ||u(t)||_{L_h^r}^q dt)^{1/q} by the composite trapezoid rule over the snapshot
/// times, or the max over snapshots for q = kInfinity. Needs >= 32 snapshots per unit time
/// (SamplingError) and q, r >= 1 (ParameterError).
double spacetime_norm(const Trajectory& traj, double q, double r);

/// Snapshots of exp(-i t sigma) f at the given times (one forward transform).
Trajectory linear_trajectory(const LatticeField& f, const DispersionSymbol& s,
                             std::span<const double> times);

/// The Strichartz exponent of d = 1: (3 - 2 alpha)/q for resonance pairs, 2 (1 - alpha)/q for
/// standard pairs.
double strichartz_derivative(double alpha, const AdmissiblePair& pair);

/// ||e^{-it(-Delta_h)^alpha} f||_{L^q([0,T]; L_h^r)} / || |nabla_h|^s f ||_{L_h^2}.
double strichartz_quotient(const LatticeField& f, double alpha, const AdmissiblePair& pair,
                           double window, std::size_t snapshots_per_unit);

/// q_* of the uniform L^infty bound: infinity for d = 1, 1/2 < alpha <= 1; 4 alpha/(1 - 2 alpha
/// + delta) for d = 1, 1/3 < alpha < 1/2; 4/(d - 2 + delta) for d = 2, 3 and alpha = 1.
/// ParameterError otherwise.
double qstar(int dim, double alpha, double delta);

/// |exp(-i t sigma_h(xi)) - exp(-i t |xi|^{2 alpha})|.
double symbol_phase_gap(const LatticeGrid& grid, double alpha, double t, const Vec3& xi);

/// max over nonzero grid frequencies of symbol_phase_gap / (|t| h^2 |xi|^{2 alpha + 2}).
double max_phase_gap_ratio(const LatticeGrid& grid, double alpha, double t);

/// || p_h e^{-it(-Delta_h)^alpha} (u0)_h - e^{-it(-Delta)^alpha} u0 ||_{L^2} for each grid.
std::vector<double> linear_flow_gap(const ContinuumField& u0, std::span<const LatticeGrid> grids,
                                    double alpha, double t);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace dnls
