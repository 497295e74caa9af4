#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/lattice.hpp"
#include "dnls/profiles.hpp"

using namespace dnls;

namespace {

EvolutionParams nls(double alpha, double lambda, double dt = 1e-3) {
  EvolutionParams p;
  p.alpha = alpha;
  p.lambda = lambda;
  p.dt = dt;
  return p;
}

LatticeField gaussian(const LatticeGrid& g, double width = 1.0) {
  ProfileSpec spec;
  spec.width = width;
  return sample_profile(spec, g);
}

double rel_sup(const LatticeField& a, const LatticeField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d / lp_norm(b, kInfinity);
}

}  // namespace

TEST(Params, WindowsAndExclusions) {
  EXPECT_THROW(nls(0.5, 1.0).validate(1), ParameterError);
  EXPECT_THROW(nls(1.3, 1.0).validate(1), ParameterError);
  EXPECT_NO_THROW(nls(1.0, 1.0).validate(1));
  EXPECT_NO_THROW(nls(0.3, 0.0).validate(1));  // linear flow is always admissible
  EvolutionParams bad = nls(1.0, 1.0);
  bad.p = 1.0;
  EXPECT_THROW(bad.validate(1), ParameterError);
  bad = nls(1.0, 1.0, -1e-3);
  EXPECT_THROW(bad.validate(1), ParameterError);
}

TEST(Evolve, ConstantFieldFollowsScalarPhaseOde) {
  // sigma(0) = 0, so a constant field only feels the nonlinearity: u(t) = u0 exp(-i lambda |u0|^2 t).
  const LatticeGrid g(1, 16, 4.0);
  LatticeField u0(g);
  const Complex c(0.6, 0.3);
  for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = c;
  const std::vector<double> times{0.0, 0.37, 1.0};
  const Trajectory traj = evolve(u0, nls(1.0, 2.0, 0.01), DispersionSymbol(1.0, SymbolKind::kDiscrete), times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Complex expected = c * std::polar(1.0, -2.0 * std::norm(c) * times[k]);
    EXPECT_NEAR(std::abs(traj.snapshots[k][5] - expected), 0.0, 1e-13);
  }
}

TEST(Evolve, FreeGaussianMatchesClosedForm) {
  // Continuum propagator, alpha = 1: u(x, t) = sqrt(w^2/(w^2 + 2it)) exp(-(x - c)^2 / (2 (w^2 + 2it))).
  const LatticeGrid ref(1, 512, 40.0);
  const ContinuumField u0 = ContinuumField::from_samples(gaussian(ref));
  const double t = 0.8;
  const LatticeField u = linear_propagate(u0, t, DispersionSymbol(1.0, SymbolKind::kContinuum)).samples();
  const Complex a = 1.0 + Complex(0.0, 2.0 * t);
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = ref.position(i)[0] - 20.0;
    err = std::max(err, std::abs(u[i] - std::sqrt(1.0 / a) * std::exp(-x * x / (2.0 * a))));
  }
  EXPECT_LT(err, 1e-12);
}

TEST(Evolve, MassIsConserved) {
  const LatticeGrid g(1, 256, 32.0);
  for (double alpha : {0.6, 0.75, 1.0}) {
    const Trajectory traj = evolve(gaussian(g), nls(alpha, 1.0), DispersionSymbol(alpha, SymbolKind::kDiscrete),
                                   uniform_times(1.0, 10));
    EXPECT_LE(mass_drift(traj), 1e-11) << alpha;
  }
}

TEST(Evolve, EnergyDriftIsSecondOrder) {
  const LatticeGrid g(1, 256, 32.0);
  const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
  const auto times = uniform_times(1.0, 4);
  const double coarse = energy_drift(evolve(gaussian(g), nls(1.0, 1.0, 4e-3), s, times));
  const double fine = energy_drift(evolve(gaussian(g), nls(1.0, 1.0, 2e-3), s, times));
  EXPECT_GE(coarse / fine, 3.0);
  EXPECT_LE(coarse / fine, 5.0);
}

TEST(Evolve, LinearCaseEqualsPropagator) {
  const LatticeGrid g(2, 32, 16.0);
  const DispersionSymbol s(0.75, SymbolKind::kDiscrete);
  const auto times = uniform_times(1.0, 3);
  const Trajectory traj = evolve(gaussian(g), nls(0.75, 0.0), s, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_LT(rel_sup(traj.snapshots[k], linear_propagate(gaussian(g), times[k], s)), 1e-12);
  }
}

TEST(Evolve, ForwardThenBackwardReturns) {
  const LatticeGrid g(1, 128, 32.0);
  const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
  const auto p = nls(1.0, 1.0);
  const std::vector<double> fwd{0.0, 1.0}, back{0.0, -1.0};
  const Trajectory a = evolve(gaussian(g), p, s, fwd);
  const Trajectory b = evolve(a.snapshots.back(), p, s, back);
  EXPECT_LT(rel_sup(b.snapshots.back(), gaussian(g)), 1e-9);
}

TEST(Evolve, ShortenedLastStepLandsOnSnapshot) {
  // dt does not divide the snapshot time; compare against a run whose step does.
  const LatticeGrid g(1, 64, 16.0);
  const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
  const std::vector<double> times{0.0, 0.0105};
  const Trajectory a = evolve(gaussian(g), nls(1.0, 0.0, 0.002), s, times);
  EXPECT_LT(rel_sup(a.snapshots.back(), linear_propagate(gaussian(g), 0.0105, s)), 1e-12);
}

TEST(Evolve, RejectsBadTimesAndNonFiniteData) {
  const LatticeGrid g(1, 16, 4.0);
  const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
  const std::vector<double> not_from_zero{0.1, 0.2};
  EXPECT_THROW(evolve(gaussian(g), nls(1.0, 1.0), s, not_from_zero), ParameterError);
  const std::vector<double> unordered{0.0, 0.2, 0.1};
  EXPECT_THROW(evolve(gaussian(g), nls(1.0, 1.0), s, unordered), ParameterError);
  LatticeField nan = gaussian(g);
  nan[3] = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> times{0.0, 0.01};
  EXPECT_THROW(evolve(nan, nls(1.0, 1.0), s, times), DivergenceError);
}

TEST(Evolve, SymmetricWindowIsMergedAndOrdered) {
  const LatticeGrid g(1, 64, 16.0);
  const Trajectory t = evolve_symmetric(gaussian(g), nls(0.75, 1.0), DispersionSymbol(0.75, SymbolKind::kDiscrete),
                                        1.0, 8);
  ASSERT_EQ(t.times.size(), 17u);
  EXPECT_DOUBLE_EQ(t.times.front(), -1.0);
  EXPECT_DOUBLE_EQ(t.times.back(), 1.0);
  for (std::size_t k = 1; k < t.times.size(); ++k) EXPECT_LT(t.times[k - 1], t.times[k]);
}

TEST(Conserved, EnergyOfAPlaneWave) {
  // u = A e^{i xi x}: mass A^2 L, energy 1/2 sigma_h(xi) A^2 L + lambda/(p+1) A^{p+1} L.
  const LatticeGrid g(1, 32, 8.0);
  const double xi = 2 * std::numbers::pi * 3 / 8.0, A = 0.7;
  LatticeField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = A * std::polar(1.0, xi * g.position(i)[0]);
  const auto p = nls(0.75, 1.5);
  const auto q = conserved(u, p);
  const double h = g.spacing();
  const double sigma = std::pow(4.0 / (h * h) * std::pow(std::sin(0.5 * h * xi), 2), 0.75);
  EXPECT_NEAR(q.mass, A * A * 8.0, 1e-12);
  EXPECT_NEAR(q.energy, 0.5 * sigma * A * A * 8.0 + 1.5 / 4.0 * std::pow(A, 4) * 8.0, 1e-11);
}

TEST(ContinuumReference, RequiresResolvedDatum) {
  const LatticeGrid ref(1, 64, 32.0);
  const std::vector<double> times{0.0, 0.1};
  // Width 0.2 on h = 1/2 leaves spectral mass above pi / (4h).
  EXPECT_THROW(continuum_reference(ContinuumField::from_samples(gaussian(ref, 0.2)), nls(1.0, 1.0), times),
               ParameterError);
  EXPECT_NO_THROW(continuum_reference(ContinuumField::from_samples(gaussian(LatticeGrid(1, 512, 32.0))),
                                      nls(1.0, 1.0), times));
}

TEST(FocusingBound, HoldsAlongTrajectoryAndRejectsOtherCases) {
  const LatticeGrid g(1, 256, 32.0);
  auto p = nls(1.0, -1.0);
  const DispersionSymbol s(1.0, SymbolKind::kDiscrete);
  const LatticeField u0 = gaussian(g);
  const double bound = focusing_gradient_bound(conserved(u0, p), p, 32.0);
  for (const auto& u : evolve(u0, p, s, uniform_times(1.0, 5)).snapshots) {
    EXPECT_LE(lp_norm(apply_symbol(u, s, 0.5), 2.0), bound);
  }
  EXPECT_THROW(focusing_gradient_bound(conserved(u0, p), nls(1.0, 1.0), 32.0), ParameterError);
  EXPECT_THROW(focusing_gradient_bound(conserved(u0, p), nls(0.75, -1.0), 32.0), ParameterError);
}

TEST(Diagnostics, RowsPerSnapshot) {
  const LatticeGrid g(1, 64, 16.0);
  const Trajectory t = evolve(gaussian(g), nls(1.0, 1.0), DispersionSymbol(1.0, SymbolKind::kDiscrete),
                              uniform_times(0.5, 5));
  const auto rows = diagnostics(t);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_NEAR(rows[0].linf_norm, 1.0, 1e-12);
  EXPECT_GT(rows[0].h_alpha_norm, std::sqrt(rows[0].mass));
}
