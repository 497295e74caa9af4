#include "dnls/field.hpp"

#include <algorithm>
#include <cmath>

#include "dnls/errors.hpp"

namespace dnls {

LatticeField::LatticeField(const LatticeGrid& grid) : grid_(grid), values_(grid.size()) {}

LatticeField::LatticeField(const LatticeGrid& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ParameterError("field length does not match the grid");
  }
}

bool LatticeField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

LatticeField& LatticeField::operator+=(const LatticeField& other) {
  if (!(grid_ == other.grid_)) throw GridMismatchError("cannot add fields on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

LatticeField& LatticeField::operator-=(const LatticeField& other) {
  if (!(grid_ == other.grid_)) throw GridMismatchError("cannot subtract fields on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

LatticeField& LatticeField::operator*=(Complex scale) noexcept {
  for (auto& v : values_) v *= scale;
  return *this;
}

LatticeField operator+(LatticeField a, const LatticeField& b) { return a += b; }
LatticeField operator-(LatticeField a, const LatticeField& b) { return a -= b; }
LatticeField operator*(Complex s, LatticeField a) { return a *= s; }

SpectralField::SpectralField(const LatticeGrid& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const LatticeGrid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw ParameterError("coefficient array length does not match the grid");
  }
}

double SpectralField::spectral_mass() const noexcept {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return sum / std::pow(grid_.box_length(), grid_.dim());
}

}  // namespace dnls
