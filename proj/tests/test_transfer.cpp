#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dnls/analysis.hpp"
#include "dnls/errors.hpp"
#include "dnls/lattice.hpp"
#include "dnls/littlewood_paley.hpp"
#include "dnls/profiles.hpp"
#include "dnls/transfer.hpp"
#include "oracles.hpp"

using namespace dnls;

namespace {

constexpr double kPi = std::numbers::pi;

LatticeField random_field(const LatticeGrid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LatticeField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = Complex(u(rng), u(rng));
  return f;
}

ContinuumField gaussian_on(const LatticeGrid& ref, double width = 1.0) {
  ProfileSpec spec;
  spec.width = width;
  return ContinuumField::from_samples(sample_profile(spec, ref));
}

}  // namespace

TEST(LittlewoodPaley, BumpShape) {
  EXPECT_EQ(bump_phi(0.3), 1.0);
  EXPECT_EQ(bump_phi(1.0), 1.0);
  EXPECT_EQ(bump_phi(2.0), 0.0);
  EXPECT_NEAR(bump_phi(1.5), 0.5, 1e-15);
  EXPECT_EQ(band_psi(0.49), 0.0);
  EXPECT_EQ(band_psi(2.01), 0.0);
  EXPECT_GT(band_psi(1.0), 0.0);
  for (double r = 0.01; r < 3.0; r += 0.01) EXPECT_GE(band_psi(r), 0.0);
}

TEST(LittlewoodPaley, PsiIntegralIsThreeHalves) {
  // phi is symmetric about its midpoint on [1, 2], so int_R psi = int_0^inf phi = 3/2.
  EXPECT_NEAR(band_psi_integral(), 1.5, 1e-12);
}

TEST(LittlewoodPaley, BandsPartitionUnity) {
  for (int d : {1, 2}) {
    const LatticeGrid g(d, d == 1 ? 512 : 64, 20.0);
    const LatticeField f = random_field(g, 2);
    LatticeField sum(g);
    for (const auto& band : littlewood_paley_bands(g)) sum += lp_project(f, band);
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(sum[i] - f[i]));
    EXPECT_LT(err, 1e-12);
  }
}

TEST(LittlewoodPaley, SquareFunctionBracket) {
  const LatticeGrid g(1, 256, 16.0);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const LatticeField f = random_field(g, seed);
    const double ratio = square_function_norm(f) / lp_norm(f, 2.0);
    EXPECT_GE(ratio, std::sqrt(0.5) - 1e-12);
    EXPECT_LE(ratio, 1.0 + 1e-12);
  }
}

TEST(Transfer, ConstantsArePreserved) {
  const LatticeGrid ref(2, 64, 8.0);
  LatticeField c(ref);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(-0.4, 1.1);
  const LatticeField fh = discretize(ContinuumField::from_samples(c), LatticeGrid(2, 16, 8.0));
  for (std::size_t i = 0; i < fh.size(); ++i) EXPECT_NEAR(std::abs(fh[i] - c[0]), 0.0, 1e-14);
  const InterpolantField p = interpolate(fh);
  EXPECT_NEAR(std::abs(p.evaluate({1.23, 7.9, 0}) - c[0]), 0.0, 1e-14);
}

TEST(Transfer, DiscretizeIsCellAverageOfAMode) {
  // f = exp(i xi x) with xi = 2 pi * 3 / L; cell average over [x_m, x_m + h] in closed form.
  const double L = 10.0;
  const LatticeGrid ref(1, 256, L);
  const double xi = 2.0 * kPi * 3.0 / L;
  LatticeField s(ref);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::polar(1.0, xi * ref.position(i)[0]);
  const LatticeGrid coarse(1, 32, L);
  const LatticeField fh = discretize(ContinuumField::from_samples(s), coarse);
  const double h = coarse.spacing();
  for (std::size_t m = 0; m < 32; ++m) {
    const double x = coarse.position(m)[0];
    const Complex expected = (std::polar(1.0, xi * (x + h)) - std::polar(1.0, xi * x)) / (Complex(0, 1) * xi * h);
    EXPECT_NEAR(std::abs(fh[m] - expected), 0.0, 1e-13);
  }
}

TEST(Transfer, DiscretizeRejectsIncompatibleGrid) {
  const ContinuumField f = gaussian_on(LatticeGrid(1, 64, 32.0));
  EXPECT_THROW(discretize(f, LatticeGrid(1, 128, 32.0)), GridMismatchError);
  EXPECT_THROW(discretize(f, LatticeGrid(1, 32, 16.0)), GridMismatchError);
}

TEST(Transfer, InterpolantIsLinearInCell) {
  const LatticeGrid g(1, 8, 4.0);
  LatticeField f(g);
  f[2] = 1.0;
  f[3] = 3.0;
  const InterpolantField p = interpolate(f);
  EXPECT_NEAR(p.evaluate({1.25, 0, 0}).real(), 2.0, 1e-15);
  EXPECT_NEAR(p.evaluate({1.0 + 4.0, 0, 0}).real(), 1.0, 1e-15);  // periodic reduction
}

TEST(Transfer, ClosedFormSymbolMatchesQuadratureOracle) {
  std::mt19937_64 rng(42);
  for (int d : {1, 2}) {
    const LatticeGrid g(d, 16, 4.0);
    const double h = g.spacing();
    std::uniform_real_distribution<double> u(-3.0 * kPi / h, 3.0 * kPi / h);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Vec3 xi{u(rng), d > 1 ? u(rng) : 0.0, 0.0};
      const Complex closed = interpolation_symbol(g, xi);
      const Complex quad = oracle::interpolation_symbol(h, d, xi);
      worst = std::max(worst, std::abs(closed - quad));
    }
    EXPECT_LT(worst, 1e-10) << "d = " << d;
  }
}

TEST(Transfer, SymbolAtZeroAndAliases) {
  const LatticeGrid g(1, 16, 4.0);
  EXPECT_NEAR(std::abs(interpolation_symbol(g, {0, 0, 0}) - 1.0), 0.0, 1e-15);
  // The hat transform vanishes at the nonzero aliases of zero.
  EXPECT_NEAR(std::abs(interpolation_symbol(g, {2 * kPi / g.spacing(), 0, 0})), 0.0, 1e-15);
}

TEST(Transfer, TransformIdentityOnCorpus) {
  const LatticeGrid g(1, 64, 16.0);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> k(-192, 192);
  std::vector<Vec3> probes;
  for (int i = 0; i < 100; ++i) probes.push_back({2 * kPi * static_cast<double>(k(rng)) / 16.0, 0, 0});
  double worst = 0.0;
  for (unsigned s = 0; s < 50; ++s) worst = std::max(worst, interpolant_transform_check(random_field(g, s), probes));
  EXPECT_LE(worst, 1e-8);

  const LatticeGrid g2(2, 16, 4.0);
  std::vector<Vec3> probes2{{2 * kPi / 4.0, -2 * kPi * 3 / 4.0, 0}, {2 * kPi * 17 / 4.0, 2 * kPi * 5 / 4.0, 0}};
  EXPECT_LE(interpolant_transform_check(random_field(g2, 77), probes2), 1e-8);
}

TEST(Transfer, TransformCheckRejectsOffLatticeProbes) {
  const LatticeGrid g(1, 16, 4.0);
  const std::vector<Vec3> bad{{0.123, 0, 0}};
  EXPECT_THROW(interpolant_transform_check(random_field(g, 1), bad), ParameterError);
}

TEST(Transfer, CrossDistanceOfModeMatchesAnalyticIntegral) {
  // f = cos(xi x), g = p_h f_h. Reference value from the oracle's own quadrature of the
  // piecewise-linear interpolant of the exact cell averages.
  const double L = 8.0;
  const double xi = 2 * kPi * 2 / L;
  const LatticeGrid ref(1, 512, L);
  LatticeField s(ref);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::cos(xi * ref.position(i)[0]);
  const ContinuumField f = ContinuumField::from_samples(s);
  const LatticeGrid coarse(1, 16, L);
  const double h = coarse.spacing();
  const LatticeField fh = discretize(f, coarse);

  const oracle::Legendre rule(20);
  double acc = 0.0;
  for (std::size_t m = 0; m < 16; ++m) {
    const double x0 = h * m;
    const auto avg = [&](double x) { return (std::sin(xi * (x + h)) - std::sin(xi * x)) / (xi * h); };
    const double a = avg(x0), b = avg(x0 + h);
    acc += oracle::integrate(
               [&](double x) {
                 const double v = a + (b - a) * (x - x0) / h - std::cos(xi * x);
                 return Complex(v * v, 0.0);
               },
               x0, x0 + h, 2, rule)
               .real();
  }
  const double expected = std::sqrt(acc);
  const double got = cross_l2_distance(interpolate(fh), f);
  // Trapezoid on the reference grid carries O(h_ref^2) relative error.
  EXPECT_NEAR(got, expected, 1e-4 * expected);
}

TEST(Transfer, InterpolationRateIsFirstOrder) {
  const LatticeGrid ref(1, 4096, 32.0);
  const ContinuumField f = gaussian_on(ref);
  std::vector<double> hs, ds;
  for (std::size_t M : {64, 128, 256, 512, 1024}) {
    const LatticeGrid g(1, M, 32.0);
    hs.push_back(g.spacing());
    ds.push_back(cross_l2_distance(interpolate(discretize(f, g)), f));
  }
  const double slope = loglog_slope(hs, ds);
  // Bound alpha - 0.05 for every alpha <= 1, and the leading -(h/2) f' term caps it near 1.
  EXPECT_GE(slope, 0.95);
  EXPECT_LE(slope, 1.1);
}

TEST(Transfer, DistributiveDefectVanishesOnConstants) {
  // p_h of a constant is that constant, so the nonlinearity commutes with it exactly.
  const LatticeGrid g(1, 32, 8.0);
  LatticeField c(g);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(0.4, -0.9);
  EXPECT_LT(distributive_defect(c, 3.0), 1e-13);
  EXPECT_GT(distributive_defect(random_field(g, 3), 3.0), 1e-3);
  EXPECT_THROW(distributive_defect(c, 1.0), ParameterError);
}

TEST(Transfer, BoundaryDecayGuard) {
  const LatticeGrid ref(1, 256, 8.0);
  EXPECT_THROW(gaussian_on(ref, 2.0).require_boundary_decay(), DomainTruncationError);
  EXPECT_NO_THROW(gaussian_on(ref, 0.5).require_boundary_decay());
}

TEST(Transfer, ContinuumEvaluateMatchesSamples) {
  const LatticeGrid ref(1, 64, 8.0);
  const ContinuumField f = gaussian_on(ref, 0.8);
  EXPECT_NEAR(std::abs(f.evaluate(ref.position(17)) - f.samples()[17]), 0.0, 1e-13);
}

TEST(Profiles, ParseAndRoundTrip) {
  const ProfileSpec spec = ProfileSpec::parse("random(seed=4, kmax=3, width=1.5)");
  EXPECT_EQ(spec.kind, ProfileSpec::Kind::kRandom);
  EXPECT_EQ(spec.seed, 4u);
  EXPECT_EQ(spec.kmax, 3);
  const ProfileSpec again = ProfileSpec::parse(spec.to_string());
  EXPECT_EQ(again.to_string(), spec.to_string());
  EXPECT_THROW(ProfileSpec::parse("sech(width=1)"), ConfigError);
  EXPECT_THROW(ProfileSpec::parse("gaussian(seed=1)"), ConfigError);
  EXPECT_THROW(ProfileSpec::parse("gaussian(width=-1)"), ConfigError);
}

TEST(Profiles, SameFunctionOnEveryGrid) {
  const ProfileSpec spec = ProfileSpec::parse("random(seed=9)");
  const LatticeField a = sample_profile(spec, LatticeGrid(1, 64, 32.0));
  const LatticeField b = sample_profile(spec, LatticeGrid(1, 128, 32.0));
  for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(std::abs(a[i] - b[2 * i]), 0.0, 1e-14);
}
