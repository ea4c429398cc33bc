#pragma once

#include <stdexcept>
#include <string>

namespace hcw {

/// Raised when inputs violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine (quadrature, optimizer, eigensolver)
/// cannot reach its requested accuracy. Carries the best estimate reached.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace hcw
