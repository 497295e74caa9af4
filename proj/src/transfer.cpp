#include "dnls/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnls/errors.hpp"
#include "dnls/lattice.hpp"
#include "gauss_rule.hpp"

namespace dnls {

namespace {

constexpr Complex kI{0.0, 1.0};

double box_volume(const LatticeGrid& g) { return std::pow(g.box_length(), g.dim()); }

// (e^{i t} - 1) / (i t), equal to 1 at t = 0.
Complex average_factor(double t) {
  if (std::abs(t) < 0.5) {
    Complex term = 1.0, sum = 1.0;
    for (int n = 1; n < 30; ++n) {
      term *= kI * t / static_cast<double>(n + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(kI * t) - 1.0) / (kI * t);
}

// int_0^h exp(-i y z) dy
Complex cell_moment0(double h, double z) { return h * average_factor(-h * z); }

// int_0^h y exp(-i y z) dy
Complex cell_moment1(double h, double z) {
  const double t = h * z;
  if (std::abs(t) < 0.5) {
    // h^2 sum_n (-i t)^n / (n! (n + 2))
    Complex power = 1.0, sum = 0.5;
    double factorial = 1.0;
    for (int n = 1; n < 30; ++n) {
      power *= -kI * t;
      factorial *= n;
      sum += power / (factorial * (n + 2));
    }
    return h * h * sum;
  }
  return std::exp(-kI * t) * (kI * h / z + 1.0 / (z * z)) - 1.0 / (z * z);
}

double sinc_squared_half(double t) {
  const double u = 0.5 * t;
  if (std::abs(u) < 1e-4) return 1.0 - u * u / 3.0;
  const double s = std::sin(u) / u;
  return s * s;
}

std::size_t wrap_index(long k, std::size_t M) {
  const long m = static_cast<long>(M);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

}  // namespace

ContinuumField::ContinuumField(SpectralField coeffs) : coeffs_(std::move(coeffs)) {}

ContinuumField ContinuumField::from_samples(const LatticeField& samples) {
  return ContinuumField(dft(samples));
}

Complex ContinuumField::evaluate(const Vec3& x) const {
  const auto& g = reference_grid();
  const int d = g.dim();
  const std::size_t M = g.points_per_axis();
  // Separable phases exp(i x_j xi_j) per axis.
  std::vector<std::vector<Complex>> phase(d, std::vector<Complex>(M));
  const double dk = 2.0 * std::numbers::pi / g.box_length();
  for (int j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < M; ++k) {
      phase[j][k] = std::exp(kI * (x[j] * dk * static_cast<double>(g.signed_index(k))));
    }
  }
  Complex sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Index3 m = g.unravel(k);
    Complex p = 1.0;
    for (int j = 0; j < d; ++j) p *= phase[j][m[j]];
    sum += coeffs_[k] * p;
  }
  return sum / box_volume(g);
}

LatticeField ContinuumField::samples() const { return idft(coeffs_); }

double ContinuumField::boundary_decay_ratio() const {
  const LatticeField v = samples();
  const auto& g = v.grid();
  const std::size_t M = g.points_per_axis();
  double all = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    all = std::max(all, a);
    const Index3 m = g.unravel(i);
    bool on_edge = false;
    for (int j = 0; j < g.dim(); ++j) on_edge = on_edge || m[j] == 0 || m[j] == M - 1;
    if (on_edge) edge = std::max(edge, a);
  }
  return all == 0.0 ? 0.0 : edge / all;
}

void ContinuumField::require_boundary_decay(double tolerance) const {
  const double ratio = boundary_decay_ratio();
  if (ratio > tolerance) {
    throw DomainTruncationError("field does not decay at the box boundary (edge/max = " +
                                std::to_string(ratio) + ")");
  }
}

double ContinuumField::spectral_tail_fraction(double cutoff) const {
  const auto& g = reference_grid();
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Vec3 xi = g.frequency(k);
    const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    const double w = std::norm(coeffs_[k]);
    total += w;
    if (r > cutoff) tail += w;
  }
  return total == 0.0 ? 0.0 : tail / total;
}

double ContinuumField::sobolev_norm(double s, bool homogeneous) const {
  const auto& g = reference_grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Vec3 xi = g.frequency(k);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    double w;
    if (homogeneous) {
      w = r2 == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r2, s);
    } else {
      w = std::pow(1.0 + r2, s);
    }
    sum += w * std::norm(coeffs_[k]);
  }
  return std::sqrt(sum / box_volume(g));
}

InterpolantField::InterpolantField(LatticeField source) : source_(std::move(source)) {}

Complex InterpolantField::evaluate_in_cell(std::size_t cell, const Vec3& offset) const {
  const auto& g = source_.grid();
  const std::size_t M = g.points_per_axis();
  const double inv_h = 1.0 / g.spacing();
  const Index3 m = g.unravel(cell);
  const Complex base = source_[cell];
  Complex value = base;
  for (int j = 0; j < g.dim(); ++j) {
    Index3 n = m;
    n[j] = (m[j] + 1) % M;
    value += (source_[g.ravel(n)] - base) * (inv_h * offset[j]);
  }
  return value;
}

Complex InterpolantField::evaluate(const Vec3& x) const {
  const auto& g = source_.grid();
  const double h = g.spacing();
  const double L = g.box_length();
  const std::size_t M = g.points_per_axis();
  Index3 m{0, 0, 0};
  Vec3 offset{0.0, 0.0, 0.0};
  for (int j = 0; j < g.dim(); ++j) {
    double xr = std::fmod(x[j], L);
    if (xr < 0.0) xr += L;
    auto cell = static_cast<std::size_t>(std::floor(xr / h));
    if (cell >= M) cell = M - 1;
    m[j] = cell;
    offset[j] = xr - h * static_cast<double>(cell);
  }
  return evaluate_in_cell(g.ravel(m), offset);
}

LatticeField discretize(const ContinuumField& f, const LatticeGrid& target) {
  const auto& ref = f.reference_grid();
  if (ref.dim() != target.dim() || !ref.same_box(target) ||
      ref.points_per_axis() % target.points_per_axis() != 0) {
    throw GridMismatchError("discretize: target grid must share the box and divide the reference");
  }
  const int d = ref.dim();
  const double h = target.spacing();
  const std::size_t Mt = target.points_per_axis();
  SpectralField coarse(target);
  for (std::size_t k = 0; k < ref.size(); ++k) {
    const Index3 m = ref.unravel(k);
    const Vec3 xi = ref.frequency(k);
    Complex factor = 1.0;
    Index3 folded{0, 0, 0};
    for (int j = 0; j < d; ++j) {
      factor *= average_factor(h * xi[j]);
      folded[j] = wrap_index(ref.signed_index(m[j]), Mt);
    }
    coarse[target.ravel(folded)] += f.spectrum()[k] * factor;
  }
  return idft(coarse);
}

InterpolantField interpolate(const LatticeField& f) { return InterpolantField(f); }

Complex interpolation_symbol(const LatticeGrid& grid, const Vec3& xi) {
  const int d = grid.dim();
  const double h = grid.spacing();
  Complex E[3], S[3];
  for (int j = 0; j < d; ++j) {
    E[j] = average_factor(-h * xi[j]);
    S[j] = sinc_squared_half(h * xi[j]);
  }
  Complex all = 1.0;
  for (int j = 0; j < d; ++j) all *= E[j];
  Complex correction = 0.0;
  for (int j = 0; j < d; ++j) {
    Complex others = 1.0;
    for (int k = 0; k < d; ++k) {
      if (k != j) others *= E[k];
    }
    correction += (E[j] - S[j]) * others;
  }
  return all - correction;
}

Complex interpolant_fourier_transform(const InterpolantField& g, const Vec3& xi) {
  const auto& f = g.source();
  const auto& grid = f.grid();
  const int d = grid.dim();
  const double h = grid.spacing();
  const std::size_t M = grid.points_per_axis();

  std::vector<std::vector<Complex>> phase(d, std::vector<Complex>(M));
  Complex m0[3], m1[3];
  for (int j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < M; ++k) {
      phase[j][k] = std::exp(-kI * (h * static_cast<double>(k) * xi[j]));
    }
    m0[j] = cell_moment0(h, xi[j]);
    m1[j] = cell_moment1(h, xi[j]);
  }
  Complex vol0 = 1.0;
  for (int j = 0; j < d; ++j) vol0 *= m0[j];
  Complex slope_weight[3];
  for (int j = 0; j < d; ++j) {
    Complex w = m1[j] / h;
    for (int k = 0; k < d; ++k) {
      if (k != j) w *= m0[k];
    }
    slope_weight[j] = w;
  }

  Complex sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Index3 m = grid.unravel(i);
    Complex p = 1.0;
    for (int j = 0; j < d; ++j) p *= phase[j][m[j]];
    Complex cell = f[i] * vol0;
    for (int j = 0; j < d; ++j) {
      Index3 n = m;
      n[j] = (m[j] + 1) % M;
      cell += (f[grid.ravel(n)] - f[i]) * slope_weight[j];
    }
    sum += p * cell;
  }
  return sum;
}

double interpolant_transform_check(const LatticeField& f, std::span<const Vec3> probes) {
  const auto& g = f.grid();
  const int d = g.dim();
  const std::size_t M = g.points_per_axis();
  const double dk = 2.0 * std::numbers::pi / g.box_length();
  const SpectralField F = dft(f);
  const InterpolantField p = interpolate(f);

  double l1 = 0.0;
  for (const auto& v : f.values()) l1 += std::abs(v);
  const double floor = 1e-6 * std::pow(g.spacing(), d) * l1 + 1e-300;

  double worst = 0.0;
  for (const Vec3& xi : probes) {
    Index3 k{0, 0, 0};
    for (int j = 0; j < d; ++j) {
      const double kk = xi[j] / dk;
      const double rounded = std::round(kk);
      if (std::abs(kk - rounded) > 1e-9 * std::max(1.0, std::abs(kk))) {
        throw ParameterError("interpolant_transform_check: probe is off the dual lattice");
      }
      k[j] = wrap_index(static_cast<long>(rounded), M);
    }
    const Complex rhs = interpolation_symbol(g, xi) * F[g.ravel(k)];
    const Complex lhs = interpolant_fourier_transform(p, xi);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), floor});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double cross_l2_distance(const InterpolantField& g, const ContinuumField& f) {
  const auto& src = g.source().grid();
  const auto& ref = f.reference_grid();
  if (src.dim() != ref.dim() || !src.same_box(ref) ||
      ref.points_per_axis() % src.points_per_axis() != 0) {
    throw GridMismatchError("cross_l2_distance: reference grid must refine the lattice grid");
  }
  const int d = src.dim();
  const std::size_t ratio = ref.points_per_axis() / src.points_per_axis();
  const std::size_t Mref = ref.points_per_axis();
  const double href = ref.spacing();
  const LatticeField fv = f.samples();

  std::size_t sub_count = 1;
  for (int j = 0; j < d; ++j) sub_count *= ratio + 1;

  double total = 0.0;
  for (std::size_t cell = 0; cell < src.size(); ++cell) {
    const Index3 m = src.unravel(cell);
    for (std::size_t s = 0; s < sub_count; ++s) {
      Index3 r{0, 0, 0};
      std::size_t rest = s;
      double weight = 1.0;
      Vec3 offset{0.0, 0.0, 0.0};
      Index3 ref_index{0, 0, 0};
      for (int j = 0; j < d; ++j) {
        r[j] = rest % (ratio + 1);
        rest /= ratio + 1;
        if (r[j] == 0 || r[j] == ratio) weight *= 0.5;
        offset[j] = href * static_cast<double>(r[j]);
        ref_index[j] = (m[j] * ratio + r[j]) % Mref;
      }
      const Complex diff = g.evaluate_in_cell(cell, offset) - fv[ref.ravel(ref_index)];
      total += weight * std::norm(diff);
    }
  }
  return std::sqrt(total * std::pow(href, d));
}

double interpolant_sobolev_norm(const LatticeField& f, double s, bool homogeneous,
                                int alias_layers) {
  if (alias_layers < 0) throw ParameterError("alias_layers must be nonnegative");
  const auto& g = f.grid();
  const int d = g.dim();
  const double period = 2.0 * std::numbers::pi / g.spacing();
  const SpectralField F = dft(f);
  const int span = 2 * alias_layers + 1;
  std::size_t alias_count = 1;
  for (int j = 0; j < d; ++j) alias_count *= static_cast<std::size_t>(span);

  double sum = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double c2 = std::norm(F[k]);
    if (c2 == 0.0) continue;
    const Vec3 base = g.frequency(k);
    for (std::size_t a = 0; a < alias_count; ++a) {
      Vec3 xi = base;
      std::size_t rest = a;
      for (int j = 0; j < d; ++j) {
        const int shift = static_cast<int>(rest % span) - alias_layers;
        rest /= span;
        xi[j] += period * shift;
      }
      const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      double w;
      if (homogeneous) {
        w = r2 == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r2, s);
      } else {
        w = std::pow(1.0 + r2, s);
      }
      sum += w * std::norm(interpolation_symbol(g, xi)) * c2;
    }
  }
  return std::sqrt(sum / box_volume(g));
}

double distributive_defect(const LatticeField& u, double p) {
  if (!(p > 1.0)) throw ParameterError("nonlinearity power must exceed 1");
  const auto& g = u.grid();
  const int d = g.dim();
  const double h = g.spacing();
  auto power = [p](Complex z) {
    const double a = std::abs(z);
    return a == 0.0 ? Complex(0.0) : std::pow(a, p - 1.0) * z;
  };
  LatticeField nu(g);
  for (std::size_t i = 0; i < u.size(); ++i) nu[i] = power(u[i]);
  const InterpolantField pu(u), pnu(nu);

  const auto& rule = detail::gauss_legendre<10>();
  const std::size_t q = rule.nodes.size();
  std::size_t points = 1;
  for (int j = 0; j < d; ++j) points *= q;

  double total = 0.0;
  for (std::size_t cell = 0; cell < g.size(); ++cell) {
    for (std::size_t s = 0; s < points; ++s) {
      std::size_t rest = s;
      Vec3 offset{0.0, 0.0, 0.0};
      double weight = 1.0;
      for (int j = 0; j < d; ++j) {
        const std::size_t idx = rest % q;
        rest /= q;
        offset[j] = 0.5 * h * (1.0 + rule.nodes[idx]);
        weight *= 0.5 * h * rule.weights[idx];
      }
      const Complex diff = pnu.evaluate_in_cell(cell, offset) - power(pu.evaluate_in_cell(cell, offset));
      total += weight * std::norm(diff);
    }
  }
  return std::sqrt(total);
}

}  // namespace dnls
