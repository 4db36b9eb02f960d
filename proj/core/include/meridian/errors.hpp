#ifndef MERIDIAN_ERRORS_HPP
#define MERIDIAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace meridian {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested operation needs a cylindrical radius rho > 0 but the point lies
/// on the x0-axis.
class AxisPointError : public Error {
 public:
  explicit AxisPointError(const std::string& msg = "point lies on the x0-axis (rho = 0)")
      : Error(msg) {}
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

class NonUnitAzimuthError : public Error {
 public:
  explicit NonUnitAzimuthError(const std::string& msg = "azimuth is not a unit vector")
      : Error(msg) {}
};

class DivisionByZeroError : public Error {
 public:
  explicit DivisionByZeroError(const std::string& msg = "meridian-plane division by zero")
      : Error(msg) {}
};

class UnsupportedOrderError : public Error {
 public:
  explicit UnsupportedOrderError(const std::string& msg) : Error(msg) {}
};

/// x1 <= 0 or x2 <= 0 where the open quadrant x1 > 0, x2 > 0 is required.
class QuadrantViolationError : public Error {
 public:
  explicit QuadrantViolationError(const std::string& msg = "point outside the open quadrant x1 > 0, x2 > 0")
      : Error(msg) {}
};

class NotAnEquilibriumError : public Error {
 public:
  explicit NotAnEquilibriumError(const std::string& msg) : Error(msg) {}
};

class StagnationPointError : public Error {
 public:
  explicit StagnationPointError(const std::string& msg = "field vanishes at the requested start point")
      : Error(msg) {}
};

class IntegrationFailureError : public Error {
 public:
  explicit IntegrationFailureError(const std::string& msg) : Error(msg) {}
};

}  // namespace meridian

#endif  // MERIDIAN_ERRORS_HPP
