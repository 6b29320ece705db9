#pragma once

#include <stdexcept>
#include <string>

namespace sixth {

/// Precondition or argument violation (bad index, x outside [-1,1], ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure of a numerical procedure or of a numerical invariant.
class NumericalError : public std::runtime_error {
 public:
  enum class Kind {
    bracketing,
    convergence,
    resonance,
    definiteness,
    non_finite,
    inconsistent,
    instability,
  };

  NumericalError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Throws NumericalError(non_finite) when value is NaN or infinite.
double require_finite(double value, const char* where);

}  // namespace sixth
