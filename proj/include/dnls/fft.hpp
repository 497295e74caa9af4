#pragma once

#include <complex>
#include <span>

#include "dnls/grid.hpp"

namespace dnls {

/// Unnormalized d-dimensional complex FFT over a grid's M^d sites.
///
/// Owns one FFTW plan. Planning is serialized behind a process-wide mutex; execution is
/// reentrant and works on arbitrary (unaligned) buffers of grid.size() elements.
class FftPlan {
 public:
  enum class Direction { kForward, kBackward };

  FftPlan(const LatticeGrid& grid, Direction direction);
  /// 1-D plan of arbitrary length n >= 1.
  FftPlan(std::size_t n, Direction direction);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  /// Forward: out_k = sum_m in_m e^{-2 pi i k.m/M}; backward uses e^{+...}. In-place allowed.
  void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
  std::size_t size() const noexcept { return size_; }

 private:
  void* plan_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace dnls
