#include "wittengap/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace wittengap {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double eps,
                     int depth, long& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  budget -= 2;
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || budget <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, budget) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, budget);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  // The tolerance scale comes from a coarse composite pass: a 3-point
  // estimate can miss narrow interior structure entirely and drive the
  // recursion toward an absolute floor it can never meet.
  const int coarse = 512;
  const double h = (b - a) / coarse;
  double scale = 0.0;
  double f_prev = f(a);
  for (int i = 0; i < coarse; ++i) {
    const double fr = f(a + (i + 1) * h);
    scale += 0.5 * h * (std::abs(f_prev) + std::abs(fr));
    f_prev = fr;
  }
  const double eps = rel_tol * std::max(scale, 1e-300);

  // Stratified start: recursing per panel keeps integrands with narrow
  // interior support (classically allowed bands, thermal windows) from
  // being mistaken for zero by a single top-level Simpson triple.
  const int panels = 64;
  long budget = 4'000'000;
  double total = 0.0;
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double pa = a + p * w;
    const double pb = (p + 1 == panels) ? b : a + (p + 1) * w;
    const double f_a = f(pa);
    const double f_b = f(pb);
    const double f_m = f(0.5 * (pa + pb));
    const double whole = simpson(f_a, f_m, f_b, pa, pb);
    total += adaptive_step(f, pa, pb, f_a, f_m, f_b, whole, eps / panels, max_depth, budget);
  }
  return total;
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NumericError("bisect_root: no sign change on the given bracket");
  }
  while (b - a > xtol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // bracket at rounding resolution
    const double fmv = f(m);
    if (fmv == 0.0) return m;
    if ((fmv > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fmv;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<std::pair<double, double>> sign_change_brackets(
    const std::function<double(double)>& f, double a, double b, int steps) {
  std::vector<std::pair<double, double>> out;
  const double h = (b - a) / steps;
  double x0 = a;
  double f0 = f(x0);
  for (int i = 1; i <= steps; ++i) {
    const double x1 = (i == steps) ? b : a + i * h;
    const double f1 = f(x1);
    if (f0 == 0.0 || (f0 > 0.0) != (f1 > 0.0)) {
      out.emplace_back(x0, x1);
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw NumericError("linear_fit: need at least two matched samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw NumericError("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = (syy > 0.0) ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.rms_residual = std::sqrt(ss_res / n);
  return fit;
}

}  // namespace wittengap
