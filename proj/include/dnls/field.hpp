#pragma once

#include <complex>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

using Complex = std::complex<double>;

/// Complex-valued function on the sites of a LatticeGrid.
class LatticeField {
 public:
  explicit LatticeField(const LatticeGrid& grid);
  /// Throws ParameterError if values.size() != grid.size().
  LatticeField(const LatticeGrid& grid, std::vector<Complex> values);

  const LatticeGrid& grid() const noexcept { return grid_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  std::vector<Complex>& values() noexcept { return values_; }

  Complex operator[](std::size_t i) const noexcept { return values_[i]; }
  Complex& operator[](std::size_t i) noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  bool all_finite() const noexcept;

  LatticeField& operator+=(const LatticeField& other);
  LatticeField& operator-=(const LatticeField& other);
  LatticeField& operator*=(Complex scale) noexcept;

 private:
  LatticeGrid grid_;
  std::vector<Complex> values_;
};

LatticeField operator+(LatticeField a, const LatticeField& b);
LatticeField operator-(LatticeField a, const LatticeField& b);
LatticeField operator*(Complex s, LatticeField a);

/// Discrete Fourier coefficients of a LatticeField, stored in the grid's (FFT) order.
///
/// coeffs(xi_k) = h^d sum_m f(x_m) exp(-i x_m . xi_k); the inverse is
/// f(x_m) = L^{-d} sum_k coeffs(xi_k) exp(i x_m . xi_k).
class SpectralField {
 public:
  explicit SpectralField(const LatticeGrid& grid);
  SpectralField(const LatticeGrid& grid, std::vector<Complex> coeffs);

  const LatticeGrid& grid() const noexcept { return grid_; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::vector<Complex>& coeffs() noexcept { return coeffs_; }
  Complex operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  Complex& operator[](std::size_t i) noexcept { return coeffs_[i]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// L^{-d} sum |coeffs|^2, which equals the squared L_h^2 norm of the inverse transform.
  double spectral_mass() const noexcept;

 private:
  LatticeGrid grid_;
  std::vector<Complex> coeffs_;
};

}  // namespace dnls
