#include "wittengap/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wittengap {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) {
    throw ConfigError("cubic spline needs at least 3 matched nodes");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i] < x_[i + 1])) {
      throw ConfigError("cubic spline nodes must be strictly increasing");
    }
  }

  // Solve the tridiagonal system for the interior second derivatives,
  // natural ends m_0 = m_{n-1} = 0.
  m_.assign(n, 0.0);
  std::vector<double> diag(n, 2.0), rhs(n, 0.0), cprime(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (hl + hr);
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  // Thomas pass over interior rows; off-diagonals are the interval widths.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    const double sub = (i == 1) ? 0.0 : hl;
    const double piv = diag[i] - sub * cprime[i - 1];
    cprime[i] = hr / piv;
    rhs[i] = (rhs[i] - sub * rhs[i - 1]) / piv;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = rhs[i] - cprime[i] * m_[i + 1];
    if (i == 1) break;
  }
}

std::size_t CubicSpline::segment(double x) const {
  // rounding slack: grid arithmetic may land an ulp past the end nodes
  const double slack = 1e-12 * (x_.back() - x_.front());
  if (x < x_.front() - slack || x > x_.back() + slack) {
    throw DomainError("tabulated potential evaluated outside its node range [" +
                      std::to_string(x_.front()) + ", " + std::to_string(x_.back()) +
                      "] at x = " + std::to_string(x));
  }
  x = std::clamp(x, x_.front(), x_.back());
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) i = 1;
  if (i >= x_.size()) i = x_.size() - 1;
  return i - 1;
}

double CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double CubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

}  // namespace wittengap
