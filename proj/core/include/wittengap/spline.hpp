#pragma once

// Natural cubic spline interpolation on a sorted node set.  The natural
// boundary condition (vanishing second derivative at the ends) gives the
// minimal-curvature C^2 interpolant.

#include <span>
#include <vector>

#include "wittengap/errors.hpp"

namespace wittengap {

class CubicSpline {
 public:
  CubicSpline() = default;
  /// Nodes must be strictly increasing; at least 3 of them.
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }

 private:
  std::size_t segment(double x) const;  // throws DomainError outside [lo, hi]

  std::vector<double> x_, y_, m_;  // m_: second derivatives at nodes
};

}  // namespace wittengap
