#include "dnls/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"

namespace dnls {

namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double cell_volume(const LatticeGrid& g) { return std::pow(g.spacing(), g.dim()); }

double box_volume(const LatticeGrid& g) { return std::pow(g.box_length(), g.dim()); }

// Zero-frequency coefficient must vanish before a multiplier that is singular there is applied.
void require_vanishing_mean(const SpectralField& F, const char* what) {
  double scale = 0.0;
  for (const auto& c : F.coeffs()) scale = std::max(scale, std::abs(c));
  if (std::abs(F[0]) > 1e-12 * scale) {
    throw SingularMultiplierError(std::string(what) +
                                  ": multiplier is singular at zero frequency but the field "
                                  "has a nonzero mean");
  }
}

}  // namespace

double lp_norm(const LatticeField& f, double p) {
  if (!(p >= 1.0)) throw ParameterError("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  // Scale by the sup norm so that large p does not overflow.
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& v : f.values()) sum += std::norm(v / m);
  } else {
    for (const auto& v : f.values()) sum += std::pow(std::abs(v) / m, p);
  }
  return m * std::pow(cell_volume(f.grid()) * sum, 1.0 / p);
}

SpectralField dft(const LatticeField& f) {
  const auto& g = f.grid();
  SpectralField F(g);
  FftPlan plan(g, FftPlan::Direction::kForward);
  plan.execute(f.values(), F.coeffs());
  const double scale = cell_volume(g);
  for (auto& c : F.coeffs()) c *= scale;
  return F;
}

LatticeField idft(const SpectralField& F) {
  const auto& g = F.grid();
  LatticeField f(g);
  FftPlan plan(g, FftPlan::Direction::kBackward);
  plan.execute(F.coeffs(), f.values());
  const double scale = 1.0 / box_volume(g);
  for (auto& v : f.values()) v *= scale;
  return f;
}

DispersionSymbol::DispersionSymbol(double alpha, SymbolKind kind) : alpha_(alpha), kind_(kind) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("dispersion exponent alpha must lie in (0, 1]");
  }
  if (alpha == 0.5) throw ParameterError("alpha = 1/2 is excluded");
}

double DispersionSymbol::operator()(const Vec3& xi, double spacing) const noexcept {
  if (kind_ == SymbolKind::kContinuum) {
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    return alpha_ == 1.0 ? r2 : std::pow(r2, alpha_);
  }
  double sum = 0.0;
  for (double x : xi) {
    const double s = std::sin(0.5 * spacing * x);
    sum += s * s;
  }
  const double base = 4.0 * sum / (spacing * spacing);
  return alpha_ == 1.0 ? base : std::pow(base, alpha_);
}

LatticeField apply_multiplier(const LatticeField& f, const Multiplier& m) {
  SpectralField F = dft(f);
  const auto& g = f.grid();
  for (std::size_t k = 0; k < F.size(); ++k) F[k] *= m(g.frequency(k));
  return idft(F);
}

LatticeField apply_symbol(const LatticeField& f, const DispersionSymbol& s, double power_scale) {
  SpectralField F = dft(f);
  const auto& g = f.grid();
  const double h = g.spacing();
  if (power_scale < 0.0) require_vanishing_mean(F, "apply_symbol");
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double sigma = s(g.frequency(k), h);
    if (sigma == 0.0) {
      // 0^0 = 1; positive powers annihilate; negative powers drop the (vanishing) mean.
      if (power_scale != 0.0) F[k] = 0.0;
      continue;
    }
    F[k] *= std::pow(sigma, power_scale);
  }
  return idft(F);
}

LatticeField discrete_laplacian(const LatticeField& f) {
  const auto& g = f.grid();
  const std::size_t M = g.points_per_axis();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  LatticeField out(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Index3 m = g.unravel(i);
    Complex acc = 0.0;
    for (int j = 0; j < g.dim(); ++j) {
      Index3 up = m, down = m;
      up[j] = (m[j] + 1) % M;
      down[j] = (m[j] + M - 1) % M;
      acc += f[g.ravel(up)] + f[g.ravel(down)] - 2.0 * f[i];
    }
    out[i] = acc * inv_h2;
  }
  return out;
}

LatticeField discrete_gradient(const LatticeField& f, int axis) {
  const auto& g = f.grid();
  if (axis < 0 || axis >= g.dim()) {
    throw ParameterError("gradient axis " + std::to_string(axis) + " out of range");
  }
  const std::size_t M = g.points_per_axis();
  const double inv_h = 1.0 / g.spacing();
  LatticeField out(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    Index3 m = g.unravel(i);
    m[axis] = (m[axis] + 1) % M;
    out[i] = (f[g.ravel(m)] - f[i]) * inv_h;
  }
  return out;
}

LatticeField fractional_gradient(const LatticeField& f, double s) {
  SpectralField F = dft(f);
  const auto& g = f.grid();
  if (s < 0.0) require_vanishing_mean(F, "fractional_gradient");
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double r = norm3(g.frequency(k));
    if (r == 0.0) {
      if (s != 0.0) F[k] = 0.0;
      continue;
    }
    F[k] *= std::pow(r, s);
  }
  return idft(F);
}

double sobolev_norm(const LatticeField& f, double s, bool homogeneous) {
  const SpectralField F = dft(f);
  const auto& g = f.grid();
  if (homogeneous && s < 0.0) require_vanishing_mean(F, "sobolev_norm");
  double sum = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const Vec3 xi = g.frequency(k);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    double weight;
    if (homogeneous) {
      weight = r2 == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r2, s);
    } else {
      weight = std::pow(1.0 + r2, s);
    }
    sum += weight * std::norm(F[k]);
  }
  return std::sqrt(sum / box_volume(g));
}

double fractional_difference_norm(const LatticeField& f, double s, double truncation_radius) {
  if (!(s > 0.0 && s < 1.0)) {
    throw ParameterError("fractional_difference_norm requires 0 < s < 1");
  }
  const auto& g = f.grid();
  if (!(truncation_radius > 0.0) ||
      truncation_radius > 0.5 * g.box_length() * (1.0 + 1e-12)) {
    throw ParameterError("truncation radius must lie in (0, L/2]");
  }
  const double h = g.spacing();
  const double hd = cell_volume(g);
  const double power = 0.5 * (g.dim() + 2.0 * s);  // applied to |y|^2
  const std::size_t M = g.points_per_axis();
  const double r2_max = truncation_radius * truncation_radius * (1.0 + 1e-12);

  double total = 0.0;
  for (std::size_t shift = 1; shift < g.size(); ++shift) {
    const Index3 o = g.unravel(shift);
    double r2 = 0.0;
    for (int j = 0; j < g.dim(); ++j) {
      const double y = h * static_cast<double>(g.signed_index(o[j]));
      r2 += y * y;
    }
    if (r2 > r2_max) continue;
    double diff2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      Index3 m = g.unravel(i);
      for (int j = 0; j < g.dim(); ++j) m[j] = (m[j] + o[j]) % M;
      diff2 += std::norm(f[g.ravel(m)] - f[i]);
    }
    total += hd * diff2 / std::pow(r2, power);
  }
  return std::sqrt(hd * total);
}

}  // namespace dnls
