#pragma once

#include <functional>
#include <limits>

#include "dnls/field.hpp"
#include "dnls/grid.hpp"

namespace dnls {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// L_h^p norm (h^d sum |f|^p)^{1/p}; p = kInfinity gives the sup norm. Throws ParameterError
/// for p < 1.
double lp_norm(const LatticeField& f, double p);

SpectralField dft(const LatticeField& f);
LatticeField idft(const SpectralField& F);

enum class SymbolKind { kDiscrete, kContinuum };

/// Dispersion relation of the (fractional) Schroedinger flow.
///
/// discrete:  ((4/h^2) sum_j sin^2(h xi_j / 2))^alpha
/// continuum: |xi|^{2 alpha}
class DispersionSymbol {
 public:
  /// Throws ParameterError unless 0 < alpha <= 1 and alpha != 1/2.
  DispersionSymbol(double alpha, SymbolKind kind);

  double alpha() const noexcept { return alpha_; }
  SymbolKind kind() const noexcept { return kind_; }

  /// `spacing` is ignored for the continuum symbol.
  double operator()(const Vec3& xi, double spacing) const noexcept;

 private:
  double alpha_;
  SymbolKind kind_;
};

using Multiplier = std::function<Complex(const Vec3& xi)>;

/// idft(m(xi) * dft(f)).
LatticeField apply_multiplier(const LatticeField& f, const Multiplier& m);

/// idft(sigma(xi)^power_scale * dft(f)). A negative power needs a vanishing zero-frequency
/// coefficient when sigma(0) = 0 (SingularMultiplierError otherwise); that coefficient is then
/// dropped.
LatticeField apply_symbol(const LatticeField& f, const DispersionSymbol& s, double power_scale);

/// Nearest-neighbour discrete Laplacian by direct stencil, with periodic wraparound.
LatticeField discrete_laplacian(const LatticeField& f);

/// Forward difference (f(x + h e_j) - f(x)) / h with periodic wraparound.
LatticeField discrete_gradient(const LatticeField& f, int axis);

/// |nabla_h|^s f, the multiplier |xi|^s (with |0|^0 = 1).
LatticeField fractional_gradient(const LatticeField& f, double s);

/// ||f||_{H_h^s} (homogeneous: multiplier |xi|^s, else (1 + |xi|^2)^{s/2}), evaluated through
/// Plancherel.
double sobolev_norm(const LatticeField& f, double s, bool homogeneous);

/// sqrt(h^d sum_{0 < |y| <= R} ||f(. + y) - f||^2_{L_h^2} / |y|^{d + 2s}), y over lattice shifts
/// measured by periodic (minimum-image) distance. Requires 0 < s < 1 and 0 < R <= L/2.
///
/// The truncated tail is O(R^{-2s}) relative to the full lattice sum.
double fractional_difference_norm(const LatticeField& f, double s, double truncation_radius);

}  // namespace dnls
