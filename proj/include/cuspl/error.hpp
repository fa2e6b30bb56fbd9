#pragma once

#include <stdexcept>
#include <string>

namespace cuspl {

/// Raised when an argument falls outside an operation's domain
/// (poles, unsupported weights, out-of-range indices, bad parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative or quadrature scheme fails to reach its
/// tolerance. The message carries the diagnostics.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cuspl
