#pragma once

#include <span>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/grid.hpp"

namespace dnls {

/// A function on the common box, represented by its trigonometric (Fourier-collocation)
/// interpolant on a fine reference grid.
///
/// f(x) = L^{-d} sum_k c_k exp(i x . xi_k), with c_k the reference grid's dft coefficients.
class ContinuumField {
 public:
  explicit ContinuumField(SpectralField coeffs);
  static ContinuumField from_samples(const LatticeField& samples);

  const LatticeGrid& reference_grid() const noexcept { return coeffs_.grid(); }
  const SpectralField& spectrum() const noexcept { return coeffs_; }

  /// Trigonometric sum at an arbitrary point of the box (O(M^d)).
  Complex evaluate(const Vec3& x) const;
  /// Values at the reference grid sites.
  LatticeField samples() const;

  /// max |f| over the outermost layer of reference sites divided by max |f| overall.
  double boundary_decay_ratio() const;
  /// Throws DomainTruncationError when boundary_decay_ratio() exceeds `tolerance`.
  void require_boundary_decay(double tolerance = 1e-10) const;
  /// Fraction of the L^2 mass carried by frequencies with |xi| > cutoff.
  double spectral_tail_fraction(double cutoff) const;

  /// ||f||_{H^s} (or the homogeneous version) of the represented function.
  double sobolev_norm(double s, bool homogeneous) const;
  double l2_norm() const { return sobolev_norm(0.0, false); }

 private:
  SpectralField coeffs_;
};

/// Linear interpolant p_h f of a lattice field:
///   (p_h f)(x) = f(x_m) + sum_j (f(x_m + h e_j) - f(x_m)) / h * (x - x_m)_j,  x in x_m + [0,h)^d,
/// with periodic wraparound at the box edge. In d >= 2 this sum of per-axis corrections is not
/// the multilinear interpolant and is discontinuous across some cell faces.
class InterpolantField {
 public:
  explicit InterpolantField(LatticeField source);

  const LatticeField& source() const noexcept { return source_; }
  /// Value at any point; x is reduced into the box periodically.
  Complex evaluate(const Vec3& x) const;
  /// Value of cell m's affine formula at x_m + offset, offset_j in [0, h] (closed cell).
  Complex evaluate_in_cell(std::size_t cell, const Vec3& offset) const;

 private:
  LatticeField source_;
};

/// Cell averages f_h(x_m) = h^{-d} int_{x_m + [0,h)^d} f, computed mode by mode:
/// exp(i xi.x) averages to exp(i xi.x_m) prod_j (e^{i h xi_j} - 1)/(i h xi_j).
/// Throws GridMismatchError unless target shares the box and its M divides the reference M.
LatticeField discretize(const ContinuumField& f, const LatticeGrid& target);

InterpolantField interpolate(const LatticeField& f);

/// Fourier symbol P_h(xi) of p_h, closed form with removable singularities filled in:
///   prod_k E(xi_k) - sum_j (E(xi_j) - S(xi_j)) prod_{k != j} E(xi_k),
///   E(z) = (e^{-ihz} - 1)/(-ihz),  S(z) = 4 sin^2(hz/2)/(hz)^2.
Complex interpolation_symbol(const LatticeGrid& grid, const Vec3& xi);

/// Continuum Fourier transform int_box (p_h f)(x) e^{-i x.xi} dx, exact cell by cell.
Complex interpolant_fourier_transform(const InterpolantField& g, const Vec3& xi);

/// max over probes of |FT(p_h f)(xi) - P_h(xi) F_h f(xi)| / max(|lhs|, |rhs|, floor), where the
/// floor is 1e-6 h^d sum |f|. Near zeros of P_h the check is therefore absolute, at 1e-6 of the
/// L^1 bound. Probes must lie on the dual lattice (2 pi / L) Z^d (aliases of grid frequencies
/// included); ParameterError otherwise.
double interpolant_transform_check(const LatticeField& f, std::span<const Vec3> probes);

/// ||p_h g - f||_{L^2(box)} by per-cell trapezoidal quadrature on f's reference grid.
/// Quadrature error is O(h_ref^2) relative. Throws GridMismatchError unless the reference grid
/// refines g's grid.
double cross_l2_distance(const InterpolantField& g, const ContinuumField& f);

/// ||p_h f||_{H^s(R^d)} (homogeneous or not) from the symbol identity, summing frequency aliases
/// xi + (2 pi / h) j with |j_i| <= alias_layers. The alias sum converges only while p_h f has
/// the requested smoothness (s < 3/2 in d = 1, s < 1/2 in d >= 2).
double interpolant_sobolev_norm(const LatticeField& f, double s, bool homogeneous,
                                int alias_layers);

/// ||p_h(|u|^{p-1} u) - |p_h u|^{p-1} p_h u||_{L^2(box)} by per-cell Gauss-Legendre quadrature.
double distributive_defect(const LatticeField& u, double p);

}  // namespace dnls
