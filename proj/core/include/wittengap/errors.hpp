#pragma once

#include <stdexcept>
#include <string>

namespace wittengap {

/// Invalid user-facing configuration (bad grid, bad family parameters, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside the supported domain (e.g. tabulated node range).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solver did not reach its tolerance; carries the best residual seen.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg), best_residual(residual) {}
  double best_residual;
};

/// A critical point with a (numerically) degenerate Hessian.
struct NonMorseError : std::runtime_error {
  NonMorseError(const std::string& msg, double where)
      : std::runtime_error(msg), location(where) {}
  double location;
};

/// Generic numerical failure (overflow, singular system, bad fit window, ...).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wittengap
