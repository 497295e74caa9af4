#include "dnls/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <utility>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan make_plan(const std::vector<int>& dims, std::size_t total, FftPlan::Direction dir) {
  std::vector<std::complex<double>> scratch(total);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int sign = dir == FftPlan::Direction::kForward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) throw Error("FFTW failed to create a plan");
  return p;
}

}  // namespace

FftPlan::FftPlan(const LatticeGrid& grid, Direction direction) : size_(grid.size()) {
  std::vector<int> dims(grid.dim(), static_cast<int>(grid.points_per_axis()));
  plan_ = make_plan(dims, size_, direction);
}

FftPlan::FftPlan(std::size_t n, Direction direction) : size_(n) {
  if (n == 0) throw ParameterError("FFT length must be positive");
  plan_ = make_plan({static_cast<int>(n)}, n, direction);
}

FftPlan::~FftPlan() {
  if (plan_ != nullptr) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

FftPlan::FftPlan(FftPlan&& other) noexcept
    : plan_(std::exchange(other.plan_, nullptr)), size_(other.size_) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  std::swap(plan_, other.plan_);
  std::swap(size_, other.size_);
  return *this;
}

void FftPlan::execute(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) const {
  if (in.size() != size_ || out.size() != size_) {
    throw ParameterError("FFT buffer length does not match the plan");
  }
  // The plan is in-place, so new-array execution must be in-place as well.
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_), buf, buf);
}

}  // namespace dnls
