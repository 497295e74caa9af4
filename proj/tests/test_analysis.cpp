#include <gtest/gtest.h>

#include <cmath>

#include "dnls/analysis.hpp"
#include "dnls/errors.hpp"
#include "dnls/littlewood_paley.hpp"
#include "dnls/profiles.hpp"
#include "oracles.hpp"

using namespace dnls;

namespace {

constexpr double kPi = std::numbers::pi;

double sigma(double alpha, double h, double xi) {
  return std::pow(4.0 / (h * h) * std::pow(std::sin(0.5 * h * xi), 2), alpha);
}

// (1/pi) int_{band} psi(h xi / N) cos(x xi) exp(-i t sigma) d xi, the kernel of an even symbol,
// by plain composite Gauss-Legendre with a fixed, generous panel count.
Complex kernel_oracle(double N, double t, double h, double alpha, double x) {
  static const oracle::Legendre rule(30);
  const double a = 0.5 * N / h, b = std::min(2.0 * N / h, kPi / h);
  return oracle::integrate(
             [&](double xi) {
               return band_psi(h * xi / N) * std::cos(x * xi) * std::polar(1.0, -t * sigma(alpha, h, xi));
             },
             a, b, 400, rule) /
         kPi;
}

}  // namespace

TEST(Pairs, AdmissibilityRules) {
  using K = AdmissiblePair::Kind;
  EXPECT_TRUE((AdmissiblePair{4, kInfinity, K::kStandard}.is_admissible(1)));
  EXPECT_TRUE((AdmissiblePair{6, kInfinity, K::kResonance}.is_admissible(1)));
  EXPECT_FALSE((AdmissiblePair{2, kInfinity, K::kStandard}.is_admissible(2)));
  EXPECT_FALSE((AdmissiblePair{2, kInfinity, K::kResonance}.is_admissible(3)));
  EXPECT_TRUE((AdmissiblePair{2, 6, K::kStandard}.is_admissible(3)));
  EXPECT_FALSE((AdmissiblePair{1, kInfinity, K::kStandard}.is_admissible(1)));
}

TEST(Qstar, Branches) {
  EXPECT_TRUE(std::isinf(qstar(1, 0.75, 0.1)));
  EXPECT_NEAR(qstar(3, 1.0, 0.1), 4.0 / 1.1, 1e-12);
  EXPECT_NEAR(qstar(1, 0.4, 0.1), 1.6 / 0.3, 1e-12);
  EXPECT_THROW(qstar(1, 0.3, 0.1), ParameterError);
  EXPECT_THROW(qstar(2, 0.75, 0.1), ParameterError);
}

TEST(DecayFit, ExactPowerLaw) {
  std::vector<double> t, v;
  for (int i = 0; i < 12; ++i) {
    t.push_back(10.0 * std::pow(100.0, i / 11.0));
    v.push_back(3.0 * std::pow(t.back(), -1.0 / 3.0));
  }
  const DecayFit f = decay_fit(t, v);
  EXPECT_NEAR(f.exponent, -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(f.prefactor, 3.0, 1e-10);
  EXPECT_LT(f.residual, 1e-12);
}

TEST(DecayFit, Preconditions) {
  std::vector<double> t{1, 2, 3, 4, 5, 6, 7, 8}, v(8, 1.0);
  EXPECT_THROW(decay_fit(t, v), ParameterError);  // under two decades
  std::vector<double> wide{1, 3, 10, 30, 100, 200, 300, 1000};
  v[2] = 0.0;
  EXPECT_THROW(decay_fit(wide, v), ParameterError);
  EXPECT_THROW(decay_fit(std::vector<double>{1, 100}, std::vector<double>{1, 1}), ParameterError);
}

TEST(Kernel, TimeZeroOriginValueIsBandMass) {
  // K_{N,0}(0) = (1/2 pi) int psi(h xi / N) d xi = (N / h) (3/2) / (2 pi).
  const double N = 0.5, h = 0.25;
  const Complex k = kernel_eval(N, 0.0, LatticeGrid::with_spacing(1, 8, h), 0.75, 0.0);
  EXPECT_NEAR(k.real(), N / h * 1.5 / (2 * kPi), 1e-10);
  EXPECT_NEAR(k.imag(), 0.0, 1e-12);
}

TEST(Kernel, QuadratureMatchesIndependentOracle) {
  const double h = 0.5;
  const LatticeGrid line = LatticeGrid::with_spacing(1, 8, h);
  for (double alpha : {0.3, 0.75, 1.0}) {
    for (double t : {0.0, 3.0, 25.0}) {
      for (double x : {0.0, 2.5, -7.0}) {
        const Complex lib = kernel_eval(1.0, t, line, alpha, x);
        const Complex ref = kernel_oracle(1.0, t, h, alpha, x);
        EXPECT_LT(std::abs(lib - ref), 1e-9) << alpha << " " << t << " " << x;
      }
    }
  }
}

TEST(Kernel, FftRouteAgreesWithQuadrature) {
  const double h = 0.25, t = 12.0, alpha = 0.75;
  const std::size_t P = 1024;
  const auto values = kernel_on_lattice(1.0, t, h, alpha, P);
  const LatticeGrid line = LatticeGrid::with_spacing(1, 8, h);
  for (long m : {-40L, -3L, 0L, 17L, 90L}) {
    const Complex q = kernel_eval(1.0, t, line, alpha, h * m);
    EXPECT_LT(std::abs(values[static_cast<std::size_t>(m + static_cast<long>(P / 2))] - q), 1e-9);
  }
}

TEST(Kernel, SupRespectsTrivialBound) {
  for (double alpha : {0.3, 1.0}) {
    const KernelSup s = kernel_sup(1.0, 5.0, 0.5, alpha);
    EXPECT_LE(s.sup, (1.5 / (2 * kPi) + 0.01) / 0.5);
    // Trapezoid (FFT) route against adaptive quadrature at the maximizing site.
    EXPECT_NEAR(s.sup, s.lattice_estimate, 1e-6 * s.sup);
  }
}

TEST(Kernel, GroupVelocityMatchesFiniteDifferences) {
  const double N = 1.0, h = 0.5, alpha = 0.75;
  double vmax = 0.0;
  const double a = 0.5 * N / h, b = std::min(2.0 * N / h, kPi / h);
  for (int i = 0; i <= 20000; ++i) {
    const double xi = a + (b - a) * i / 20000.0, d = 1e-6;
    vmax = std::max(vmax, std::abs(sigma(alpha, h, xi + d) - sigma(alpha, h, xi - d)) / (2 * d));
  }
  EXPECT_NEAR(band_group_velocity(N, h, alpha), vmax, 1e-6 * vmax);
}

TEST(Kernel, StationaryPointZeroesTheHessian) {
  const LatticeGrid line = LatticeGrid::with_spacing(1, 8, 0.1);
  EXPECT_FALSE(stationary_point(0.3, line).has_value());
  for (double alpha : {0.75, 1.0}) {
    const double xi0 = *stationary_point(alpha, line);
    EXPECT_NEAR(symbol_second_derivative(alpha, 0.1, xi0), 0.0, 1e-9);
    // Centered second difference of the symbol as an independent check away from xi0.
    const double xi = 0.7 * xi0, d = 1e-4;
    const double fd = (sigma(alpha, 0.1, xi + d) - 2 * sigma(alpha, 0.1, xi) + sigma(alpha, 0.1, xi - d)) / (d * d);
    EXPECT_NEAR(symbol_second_derivative(alpha, 0.1, xi), fd, 1e-4 * std::abs(fd));
  }
}

TEST(SpaceTime, ConstantInTimeAndMax) {
  const LatticeGrid g(1, 32, 8.0);
  ProfileSpec spec;
  const LatticeField f = sample_profile(spec, g);
  Trajectory traj;
  traj.times = uniform_times(1.0, 32);
  traj.snapshots.assign(traj.times.size(), f);
  EXPECT_NEAR(spacetime_norm(traj, 4.0, 2.0), lp_norm(f, 2.0), 1e-12);
  EXPECT_NEAR(spacetime_norm(traj, kInfinity, kInfinity), lp_norm(f, kInfinity), 1e-15);
  traj.snapshots[5] = Complex(3.0) * f;
  EXPECT_NEAR(spacetime_norm(traj, kInfinity, kInfinity), 3.0 * lp_norm(f, kInfinity), 1e-15);
}

TEST(SpaceTime, SparseSnapshotsRejected) {
  const LatticeGrid g(1, 32, 8.0);
  Trajectory traj;
  traj.times = uniform_times(1.0, 10);
  traj.snapshots.assign(traj.times.size(), LatticeField(g));
  EXPECT_THROW(spacetime_norm(traj, 4.0, 2.0), SamplingError);
}

TEST(Strichartz, DerivativeExponents) {
  using K = AdmissiblePair::Kind;
  EXPECT_NEAR(strichartz_derivative(0.75, {6, kInfinity, K::kResonance}), 1.5 / 6.0, 1e-15);
  EXPECT_NEAR(strichartz_derivative(0.3, {4, kInfinity, K::kStandard}), 1.4 / 4.0, 1e-15);
}

TEST(PhaseGap, TrivialCasesAndBound) {
  const LatticeGrid g(1, 256, 32.0);
  EXPECT_EQ(symbol_phase_gap(g, 0.75, 1.0, {0, 0, 0}), 0.0);
  EXPECT_EQ(symbol_phase_gap(g, 0.75, 0.0, {2.0, 0, 0}), 0.0);
  for (double alpha : {0.6, 0.75, 1.0}) EXPECT_LE(max_phase_gap_ratio(g, alpha, 1.0), 2.0);
  // |e^{-ia} - e^{-ib}| = 2 |sin((a - b) / 2)|, checked at one frequency directly.
  const double xi = 3.0, h = g.spacing();
  const double a = sigma(0.75, h, xi), b = std::pow(xi, 1.5);
  EXPECT_NEAR(symbol_phase_gap(g, 0.75, 1.0, {xi, 0, 0}), std::abs(std::polar(1.0, -a) - std::polar(1.0, -b)), 1e-14);
}

TEST(LinearFlowGap, ReducesToInterpolationGapAtTimeZero) {
  const LatticeGrid ref(1, 1024, 32.0);
  ProfileSpec spec;
  const ContinuumField u0 = ContinuumField::from_samples(sample_profile(spec, ref));
  const std::vector<LatticeGrid> grids{LatticeGrid(1, 64, 32.0), LatticeGrid(1, 128, 32.0)};
  const auto gaps = linear_flow_gap(u0, grids, 1.0, 0.0);
  for (std::size_t i = 0; i < grids.size(); ++i) {
    EXPECT_NEAR(gaps[i], cross_l2_distance(interpolate(discretize(u0, grids[i])), u0), 1e-14);
  }
}

TEST(Slope, ExactOnPowerLaw) {
  const std::vector<double> x{0.5, 0.25, 0.125}, y{0.5 * 0.5 * 0.5, 0.25 * 0.25 * 0.5, 0.125 * 0.125 * 0.5};
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
}
