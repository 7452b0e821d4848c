#pragma once

#include <stdexcept>
#include <string>

namespace helix {

// Base class for every error thrown by the library. CLI handlers catch this
// to produce machine-readable failure records.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation (non-positive pitch,
// inverse evaluated off its branch, zero denominator in a ratio, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Complex evaluation would overflow (|Im z| beyond the exp guard).
class OverflowGuardError : public Error {
 public:
  using Error::Error;
};

// Evaluation point is too close to a pole for the result to carry any
// correct digits.
class PoleProximityError : public Error {
 public:
  using Error::Error;
};

// A requested accuracy could not be certified within the configured budget.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

// An iterative solve (Newton, bisection) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Argument-principle integral did not land near an integer, or a contour
// came indistinguishably close to a pole.
class IndeterminateCountError : public Error {
 public:
  using Error::Error;
};

// Sampled curve is self-intersecting or otherwise degenerate at the
// resolution of its samples.
class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};

}  // namespace helix
