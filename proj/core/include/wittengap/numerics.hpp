#pragma once

// Small shared numerical utilities: adaptive quadrature, root bracketing,
// ordinary least squares.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "wittengap/errors.hpp"

namespace wittengap {

/// Adaptive Simpson quadrature on [a, b] with a relative tolerance.
/// Splits until |S_left + S_right - S| <= 15 * tol * |S| (or an absolute
/// floor for near-zero integrals).  Handles integrable endpoint
/// singularities like sqrt(x - a) through subdivision.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, int max_depth = 48);

/// Finds a root of f in [a, b] by bisection; requires a sign change.
/// Refines until the bracket is below xtol.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol = 1e-12);

/// Scans [a, b] on `steps` intervals and returns brackets [x_i, x_{i+1}]
/// where f changes sign (or hits zero).
std::vector<std::pair<double, double>> sign_change_brackets(
    const std::function<double(double)>& f, double a, double b, int steps);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares of y on x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// Trapezoid rule over uniformly spaced samples.
inline double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * spacing;
}

}  // namespace wittengap
