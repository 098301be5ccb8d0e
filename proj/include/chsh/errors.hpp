#pragma once

#include <stdexcept>
#include <string>

namespace chsh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested state is the null vector, or its normalization
/// denominator is too small to be meaningful.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// A Bell setup was paired with a state family it cannot measure.
class IncompatibleSetup : public Error {
 public:
  using Error::Error;
};

/// A double series did not reach its tail tolerance within the allowed
/// number of pair terms.
class SeriesTruncation : public Error {
 public:
  SeriesTruncation(const std::string& what, double residual_bound)
      : Error(what), residual_bound_(residual_bound) {}

  double residual_bound() const noexcept { return residual_bound_; }

 private:
  double residual_bound_;
};

/// A numerical invariant (norm, reality, Tsirelson ceiling) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chsh
