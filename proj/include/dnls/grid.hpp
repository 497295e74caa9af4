#pragma once

#include <array>
#include <cstddef>

namespace dnls {

/// Frequency or position vector; axes beyond the grid dimension are zero.
using Vec3 = std::array<double, 3>;
using Index3 = std::array<std::size_t, 3>;

/// Periodic truncation of the lattice hZ^d to a box of side L = M h.
///
/// Sites are x_m = h m with m_j in [0, M). Storage order is row-major with the last axis
/// fastest, matching FFTW. Frequencies are xi_k = 2 pi k / L with the signed index k_j in
/// [-M/2, M/2); the Nyquist index keeps its negative sign.
class LatticeGrid {
 public:
  /// Throws ParameterError unless dim is 1..3, M is a power of two >= 8 and L > 0.
  LatticeGrid(int dim, std::size_t points_per_axis, double box_length);

  static LatticeGrid with_spacing(int dim, std::size_t points_per_axis, double spacing);

  int dim() const noexcept { return dim_; }
  std::size_t points_per_axis() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }
  double box_length() const noexcept { return box_length_; }
  /// Total number of sites, M^dim.
  std::size_t size() const noexcept { return size_; }

  std::size_t stride(int axis) const noexcept;
  Index3 unravel(std::size_t flat) const noexcept;
  std::size_t ravel(const Index3& m) const noexcept;

  /// Signed wavenumber index for a storage index in [0, M).
  long signed_index(std::size_t k) const noexcept;
  /// Frequency vector of the storage index `flat`.
  Vec3 frequency(std::size_t flat) const noexcept;
  /// Position x_m of the storage index `flat`.
  Vec3 position(std::size_t flat) const noexcept;

  /// Same dim and box, and one point count divides the other.
  bool is_refinement_compatible(const LatticeGrid& other) const noexcept;
  bool same_box(const LatticeGrid& other) const noexcept;

  friend bool operator==(const LatticeGrid& a, const LatticeGrid& b) noexcept {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.same_box(b);
  }

 private:
  int dim_;
  std::size_t points_;
  double box_length_;
  double spacing_;
  std::size_t size_;
};

}  // namespace dnls
