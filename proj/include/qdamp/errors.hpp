#pragma once

#include <stdexcept>
#include <string>

namespace qdamp {

/// Operands live on spaces of different dimension.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested dimension exceeds the configured dense-backend cap.
class DimensionCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// NaN or Inf found where finite values are required.
class NonFiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not certify its result to the requested tolerance.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double estimate, double tolerance)
      : std::runtime_error(what), estimate_(estimate), tolerance_(tolerance) {}

  double estimate() const noexcept { return estimate_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double estimate_;
  double tolerance_;
};

/// The truncation is too small for the requested tail bound.
class TailBoundError : public std::invalid_argument {
 public:
  TailBoundError(const std::string& what, std::size_t minimal_dim)
      : std::invalid_argument(what), minimal_dim_(minimal_dim) {}

  std::size_t minimal_dim() const noexcept { return minimal_dim_; }

 private:
  std::size_t minimal_dim_;
};

}  // namespace qdamp
