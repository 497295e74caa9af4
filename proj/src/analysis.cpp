#include "dnls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"
#include "dnls/lattice.hpp"
#include "dnls/littlewood_paley.hpp"
#include "gauss_rule.hpp"

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;

double sigma_1d(double alpha, double h, double xi) {
  const double s = std::sin(0.5 * h * xi);
  const double base = 4.0 * s * s / (h * h);
  return alpha == 1.0 ? base : std::pow(base, alpha);
}

double sigma_prime_1d(double alpha, double h, double xi) {
  const double s = std::sin(0.5 * h * xi);
  const double c = std::cos(0.5 * h * xi);
  if (s == 0.0) return 0.0;
  return std::pow(4.0 / (h * h), alpha) * alpha * h * std::pow(std::abs(s), 2.0 * alpha - 1.0) *
         c * (s > 0.0 ? 1.0 : -1.0);
}

// Band [a, b] of positive frequencies on which psi(h xi / N) is supported, clipped to the zone.
std::pair<double, double> band_interval(double N, double h) {
  return {0.5 * N / h, std::min(2.0 * N / h, kPi / h)};
}

// (1/pi) int_a^b psi(h xi/N) cos(x xi) exp(-i t sigma(xi)) d xi with `panels` equal panels.
Complex kernel_panels(double N, double t, double h, double alpha, double x, std::size_t panels) {
  const auto [a, b] = band_interval(N, h);
  const auto& rule = detail::gauss_legendre<20>();
  const double width = (b - a) / static_cast<double>(panels);
  Complex sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * width;
    Complex panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double xi = mid + 0.5 * width * rule.nodes[i];
      const double phase = -t * sigma_1d(alpha, h, xi);
      panel += rule.weights[i] * band_psi(h * xi / N) * std::cos(x * xi) *
               Complex(std::cos(phase), std::sin(phase));
    }
    sum += 0.5 * width * panel;
  }
  return sum / kPi;
}

double trivial_scale(double N, double h) { return N / h * band_psi_integral() / (2.0 * kPi); }

double total_span(std::span<const double> times) {
  double lo = times[0], hi = times[0];
  for (double t : times) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

}  // namespace

bool AdmissiblePair::is_admissible(int dim) const noexcept {
  if (!(q >= 2.0) || !(r >= 2.0)) return false;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double lead = kind == Kind::kStandard ? 2.0 : 3.0;
  if (std::abs(lead * inv_q + dim * inv_r - 0.5 * dim) > 1e-12) return false;
  const int excluded_dim = kind == Kind::kStandard ? 2 : 3;
  return !(q == 2.0 && std::isinf(r) && dim == excluded_dim);
}

double band_psi_integral() {
  // psi is even and supported in [1/2, 2]; its transition pieces are smooth, so a composite
  // Gauss rule on the two transition intervals is exact to roundoff.
  const auto& rule = detail::gauss_legendre<20>();
  auto integrate = [&](double a, double b) {
    const std::size_t panels = 64;
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
      const double mid = a + (k + 0.5) * width;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += 0.5 * width * rule.weights[i] * band_psi(mid + 0.5 * width * rule.nodes[i]);
      }
    }
    return sum;
  };
  return 2.0 * (integrate(0.5, 1.0) + integrate(1.0, 2.0));
}

double band_group_velocity(double N, double h, double alpha) {
  const auto [a, b] = band_interval(N, h);
  double v = 0.0;
  const int samples = 4096;
  for (int i = 0; i <= samples; ++i) {
    const double xi = a + (b - a) * i / samples;
    v = std::max(v, std::abs(sigma_prime_1d(alpha, h, xi)));
  }
  return v;
}

Complex kernel_eval(double N, double t, const LatticeGrid& grid, double alpha, double x,
                    double tolerance, int max_doublings) {
  if (grid.dim() != 1) throw ParameterError("kernel_eval is one-dimensional");
  if (!(N > 0.0 && N <= 1.0)) throw ParameterError("band N must lie in (0, 1]");
  const double h = grid.spacing();
  const auto [a, b] = band_interval(N, h);
  const double v = band_group_velocity(N, h, alpha);
  const double variation = (std::abs(x) + std::abs(t) * v) * (b - a);
  // A 20-point Gauss panel integrates about two full oscillations to roundoff.
  auto panels = static_cast<std::size_t>(std::ceil(variation / (4.0 * kPi))) + 2;
  const double scale = trivial_scale(N, h);

  Complex previous = kernel_panels(N, t, h, alpha, x, panels);
  double diff = 0.0;
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    const Complex current = kernel_panels(N, t, h, alpha, x, panels);
    diff = std::abs(current - previous) / scale;
    if (diff <= tolerance) return current;
    previous = current;
  }
  throw AccuracyError("kernel quadrature did not reach the requested tolerance", diff);
}

std::vector<Complex> kernel_on_lattice(double N, double t, double h, double alpha,
                                       std::size_t points) {
  FftPlan plan(points, FftPlan::Direction::kBackward);
  std::vector<Complex> g(points);
  const double dxi = 2.0 * kPi / (static_cast<double>(points) * h);
  const long half = static_cast<long>(points / 2);
  for (std::size_t j = 0; j < points; ++j) {
    const long k = static_cast<long>(j) < half ? static_cast<long>(j)
                                               : static_cast<long>(j) - static_cast<long>(points);
    const double xi = dxi * static_cast<double>(k);
    const double weight = band_psi(h * xi / N);
    if (weight == 0.0) continue;
    const double phase = -t * sigma_1d(alpha, h, xi);
    g[j] = weight * Complex(std::cos(phase), std::sin(phase));
  }
  plan.execute(g, g);
  // Reorder to m = -points/2 .. points/2 - 1 and apply the trapezoid weight 1/(points h).
  std::vector<Complex> out(points);
  const double scale = 1.0 / (static_cast<double>(points) * h);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = g[(i + points / 2) % points] * scale;
  }
  return out;
}

KernelSup kernel_sup(double N, double t, double h, double alpha, int refine, double tolerance) {
  const double v = band_group_velocity(N, h, alpha);
  const double window = 4.0 * std::abs(t) * v + 64.0 * h;
  // Periodic images of the kernel start 2 * window away from the origin, outside the cone.
  std::size_t points = 256;
  while (static_cast<double>(points) * h < 2.0 * window) points *= 2;
  const std::vector<Complex> values = kernel_on_lattice(N, t, h, alpha, points);

  std::vector<std::size_t> order(points);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(std::max(refine, 1)), points);
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](std::size_t i, std::size_t j) { return std::abs(values[i]) > std::abs(values[j]); });

  const LatticeGrid line(1, 8, 8.0 * h);
  KernelSup best;
  best.t = t;
  best.candidates = static_cast<int>(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t i = order[c];
    const double x = h * (static_cast<double>(i) - static_cast<double>(points / 2));
    const Complex k = kernel_eval(N, t, line, alpha, x, tolerance);
    const double value = std::abs(k);
    if (value > best.sup) {
      best.sup = value;
      best.value = k;
      best.x_at_sup = x;
      best.lattice_estimate = std::abs(values[i]);
    }
  }
  return best;
}

std::optional<double> stationary_point(double alpha, const LatticeGrid& grid) {
  if (!(alpha > 0.5 && alpha <= 1.0)) return std::nullopt;
  return std::acos((1.0 - alpha) / alpha) / grid.spacing();
}

double symbol_second_derivative(double alpha, double h, double xi) {
  const double s = std::sin(0.5 * h * xi);
  const double c = std::cos(0.5 * h * xi);
  if (s == 0.0) {
    if (alpha == 1.0) return 2.0;
    throw ParameterError("second derivative of the fractional symbol is singular at xi = 0");
  }
  return std::pow(4.0 / (h * h), alpha) * alpha * 0.5 * h * h *
         std::pow(std::abs(s), 2.0 * alpha - 2.0) * ((2.0 * alpha - 1.0) * c * c - s * s);
}

DecayFit decay_fit(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size()) throw ParameterError("decay_fit: length mismatch");
  if (t.size() < 8) throw ParameterError("decay_fit needs at least 8 samples");
  double lo = kInfinity, hi = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(values[i] > 0.0)) {
      throw ParameterError("decay_fit needs positive times and values");
    }
    lo = std::min(lo, t[i]);
    hi = std::max(hi, t[i]);
  }
  if (hi < 100.0 * lo * (1.0 - 1e-12)) {
    throw ParameterError("decay_fit needs samples spanning two decades");
  }
  const std::size_t n = t.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(t[i]);
    my += std::log(values[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(t[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  DecayFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(values[i]) - (intercept + fit.exponent * std::log(t[i]));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

double spacetime_norm(const Trajectory& traj, double q, double r) {
  if (!(q >= 1.0) || !(r >= 1.0)) throw ParameterError("spacetime_norm needs q, r >= 1");
  const std::size_t n = traj.times.size();
  if (n < 2) throw SamplingError("spacetime_norm needs at least two snapshots");
  const double span = total_span(traj.times);
  if (static_cast<double>(n - 1) < 32.0 * span * (1.0 - 1e-9)) {
    throw SamplingError("spacetime_norm needs at least 32 snapshots per unit time");
  }
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = lp_norm(traj.snapshots[i], r);
  if (std::isinf(q)) return *std::max_element(norms.begin(), norms.end());
  // Scale by the largest value to keep large q from overflowing.
  const double top = *std::max_element(norms.begin(), norms.end());
  if (top == 0.0) return 0.0;
  double integral = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double dt = std::abs(traj.times[i] - traj.times[i - 1]);
    integral += 0.5 * dt * (std::pow(norms[i] / top, q) + std::pow(norms[i - 1] / top, q));
  }
  return top * std::pow(integral, 1.0 / q);
}

Trajectory linear_trajectory(const LatticeField& f, const DispersionSymbol& s,
                             std::span<const double> times) {
  const auto& g = f.grid();
  const SpectralField F = dft(f);
  std::vector<double> sigma(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) sigma[k] = s(g.frequency(k), g.spacing());
  Trajectory traj;
  traj.params.alpha = s.alpha();
  traj.times.assign(times.begin(), times.end());
  traj.snapshots.reserve(times.size());
  for (double t : times) {
    SpectralField G = F;
    for (std::size_t k = 0; k < G.size(); ++k) {
      G[k] *= Complex(std::cos(t * sigma[k]), -std::sin(t * sigma[k]));
    }
    traj.snapshots.push_back(idft(G));
  }
  return traj;
}

double strichartz_derivative(double alpha, const AdmissiblePair& pair) {
  const double inv_q = std::isinf(pair.q) ? 0.0 : 1.0 / pair.q;
  return pair.kind == AdmissiblePair::Kind::kResonance ? (3.0 - 2.0 * alpha) * inv_q
                                                        : 2.0 * (1.0 - alpha) * inv_q;
}

double strichartz_quotient(const LatticeField& f, double alpha, const AdmissiblePair& pair,
                           double window, std::size_t snapshots_per_unit) {
  const auto count = static_cast<std::size_t>(std::ceil(window * snapshots_per_unit));
  const std::vector<double> times = uniform_times(window, count);
  const DispersionSymbol s(alpha, SymbolKind::kDiscrete);
  const Trajectory traj = linear_trajectory(f, s, times);
  const double numerator = spacetime_norm(traj, pair.q, pair.r);
  const double denominator = sobolev_norm(f, strichartz_derivative(alpha, pair), true);
  if (denominator == 0.0) throw ParameterError("strichartz_quotient: field has no derivative");
  return numerator / denominator;
}

double qstar(int dim, double alpha, double delta) {
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  if (dim == 1 && alpha > 0.5 && alpha <= 1.0) return kInfinity;
  if (dim == 1 && alpha > 1.0 / 3.0 && alpha < 0.5) return 4.0 * alpha / (1.0 - 2.0 * alpha + delta);
  if ((dim == 2 || dim == 3) && alpha == 1.0) return 4.0 / (dim - 2.0 + delta);
  throw ParameterError("q_* is defined for d = 1 with 1/3 < alpha <= 1 (alpha != 1/2) and for "
                       "d = 2, 3 with alpha = 1");
}

double symbol_phase_gap(const LatticeGrid& grid, double alpha, double t, const Vec3& xi) {
  const DispersionSymbol discrete(alpha, SymbolKind::kDiscrete);
  const DispersionSymbol continuum(alpha, SymbolKind::kContinuum);
  const double a = t * discrete(xi, grid.spacing());
  const double b = t * continuum(xi, grid.spacing());
  // |e^{-ia} - e^{-ib}| = 2 |sin((a - b)/2)|
  return 2.0 * std::abs(std::sin(0.5 * (a - b)));
}

double max_phase_gap_ratio(const LatticeGrid& grid, double alpha, double t) {
  const double h = grid.spacing();
  double worst = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Vec3 xi = grid.frequency(k);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (r2 == 0.0) continue;
    const double bound = std::abs(t) * h * h * std::pow(r2, alpha + 1.0);
    worst = std::max(worst, symbol_phase_gap(grid, alpha, t, xi) / bound);
  }
  return worst;
}

std::vector<double> linear_flow_gap(const ContinuumField& u0, std::span<const LatticeGrid> grids,
                                    double alpha, double t) {
  const DispersionSymbol discrete(alpha, SymbolKind::kDiscrete);
  const DispersionSymbol continuum(alpha, SymbolKind::kContinuum);
  const ContinuumField exact = linear_propagate(u0, t, continuum);
  std::vector<double> gaps;
  gaps.reserve(grids.size());
  for (const auto& g : grids) {
    const LatticeField uh = linear_propagate(discretize(u0, g), t, discrete);
    gaps.push_back(cross_l2_distance(interpolate(uh), exact));
  }
  return gaps;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("loglog_slope needs >= 2 points");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ParameterError("loglog_slope needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace dnls
