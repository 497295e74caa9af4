#include "dnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

LatticeGrid::LatticeGrid(int dim, std::size_t points_per_axis, double box_length)
    : dim_(dim), points_(points_per_axis), box_length_(box_length) {
  if (dim < 1 || dim > 3) {
    throw ParameterError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (points_per_axis < 8 || !is_power_of_two(points_per_axis)) {
    throw ParameterError("points per axis must be a power of two >= 8, got " +
                         std::to_string(points_per_axis));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ParameterError("box length must be positive and finite");
  }
  spacing_ = box_length_ / static_cast<double>(points_);
  size_ = 1;
  for (int j = 0; j < dim_; ++j) size_ *= points_;
}

LatticeGrid LatticeGrid::with_spacing(int dim, std::size_t points_per_axis, double spacing) {
  if (!(spacing > 0.0)) throw ParameterError("lattice spacing must be positive");
  return LatticeGrid(dim, points_per_axis, spacing * static_cast<double>(points_per_axis));
}

std::size_t LatticeGrid::stride(int axis) const noexcept {
  std::size_t s = 1;
  for (int j = dim_ - 1; j > axis; --j) s *= points_;
  return s;
}

Index3 LatticeGrid::unravel(std::size_t flat) const noexcept {
  Index3 m{0, 0, 0};
  for (int j = dim_ - 1; j >= 0; --j) {
    m[j] = flat % points_;
    flat /= points_;
  }
  return m;
}

std::size_t LatticeGrid::ravel(const Index3& m) const noexcept {
  std::size_t flat = 0;
  for (int j = 0; j < dim_; ++j) flat = flat * points_ + m[j];
  return flat;
}

long LatticeGrid::signed_index(std::size_t k) const noexcept {
  const auto half = static_cast<long>(points_ / 2);
  const auto kk = static_cast<long>(k);
  return kk < half ? kk : kk - static_cast<long>(points_);
}

Vec3 LatticeGrid::frequency(std::size_t flat) const noexcept {
  const Index3 m = unravel(flat);
  const double dk = 2.0 * std::numbers::pi / box_length_;
  Vec3 xi{0.0, 0.0, 0.0};
  for (int j = 0; j < dim_; ++j) xi[j] = dk * static_cast<double>(signed_index(m[j]));
  return xi;
}

Vec3 LatticeGrid::position(std::size_t flat) const noexcept {
  const Index3 m = unravel(flat);
  Vec3 x{0.0, 0.0, 0.0};
  for (int j = 0; j < dim_; ++j) x[j] = spacing_ * static_cast<double>(m[j]);
  return x;
}

bool LatticeGrid::same_box(const LatticeGrid& other) const noexcept {
  const double scale = std::max(box_length_, other.box_length_);
  return std::abs(box_length_ - other.box_length_) <= 4.0 * 2.220446049250313e-16 * scale;
}

bool LatticeGrid::is_refinement_compatible(const LatticeGrid& other) const noexcept {
  if (dim_ != other.dim_ || !same_box(other)) return false;
  const std::size_t lo = std::min(points_, other.points_);
  const std::size_t hi = std::max(points_, other.points_);
  return hi % lo == 0;
}

}  // namespace dnls
