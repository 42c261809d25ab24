#pragma once

#include <stdexcept>
#include <string>

namespace diagcubic {

// Bad arguments: shapes that do not line up, indices out of range,
// parameters outside their documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested row-support pattern cannot be reached by row operations.
class UnachievablePattern : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A job would exceed its time or memory budget; nothing was computed.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal guarantee failed (e.g. a verified input could not be
// normalized).  Indicates a bug rather than bad input.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Numerical procedure did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace diagcubic
