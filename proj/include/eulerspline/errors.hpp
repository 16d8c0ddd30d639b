#pragma once

#include <stdexcept>
#include <string>

namespace eulerspline {

/// A documented precondition of an operation was violated (bad degree, n too
/// small, non-zero kernel sum, ...). Maps to CLI exit code 2 and HTTP 422.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Exact integer arithmetic left the 128-bit range.
class OverflowError : public DomainError {
 public:
  explicit OverflowError(const std::string& what) : DomainError(what) {}
};

/// Caller mixed incompatible inputs (boundary modes, dimensions, malformed
/// documents). Maps to CLI exit code 1 and HTTP 400.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A curve evaluated to NaN or infinity during integration.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double where() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace eulerspline
