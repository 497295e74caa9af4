#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnls {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (p < 1, s outside (0,1), bad axis, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A negative power of a symbol that vanishes at zero frequency was applied to a field with a
/// nonzero mean.
class SingularMultiplierError : public Error {
 public:
  using Error::Error;
};

/// Two grids that must share a box (and nest) do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// The field does not decay at the box boundary, so the torus no longer stands in for the
/// whole lattice.
class DomainTruncationError : public Error {
 public:
  using Error::Error;
};

/// A time integration produced NaN/Inf or exceeded the blow-up guard.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Adaptive quadrature failed to reach its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A trajectory is sampled too sparsely in time for a space-time norm.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnls
