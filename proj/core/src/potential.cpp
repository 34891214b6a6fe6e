#include "wittengap/potential.hpp"

#include <algorithm>
#include <cmath>

#include "wittengap/numerics.hpp"

namespace wittengap {

Potential Potential::quadratic(double alpha, int dimension) {
  if (!(alpha > 0.0)) throw ConfigError("quadratic: stiffness alpha must be > 0");
  if (dimension < 1) throw ConfigError("potential dimension must be >= 1");
  return Potential(Quadratic{alpha}, dimension);
}

Potential Potential::quartic_double_well(double h, double a, int dimension) {
  if (!(h > 0.0)) throw ConfigError("quartic_double_well: barrier height h must be > 0");
  if (!(a > 0.0)) throw ConfigError("quartic_double_well: well position a must be > 0");
  if (dimension < 1) throw ConfigError("potential dimension must be >= 1");
  return Potential(QuarticDoubleWell{h, a}, dimension);
}

Potential Potential::gaussian_barrier_well(double delta_u, double a, double confinement) {
  if (!(delta_u > 0.0)) throw ConfigError("gaussian_barrier_well: delta_u must be > 0");
  if (!(a > 0.0)) throw ConfigError("gaussian_barrier_well: inverse width a must be > 0");
  GaussianBarrierWell g{delta_u, a, confinement};
  if (!(g.confinement > 0.0)) {
    // weak quartic wall: wells sit a couple of barrier widths out and the
    // barrier top stays Gaussian-dominated
    g.confinement = 1e-3 * delta_u * a * a * a * a;
  }
  return Potential(g, 1);
}

Potential Potential::tabulated(std::vector<double> x, std::vector<double> u) {
  auto spline = std::make_shared<const CubicSpline>(std::move(x), std::move(u));
  return Potential(Family(spline), 1);
}

PotentialFamily Potential::family() const {
  switch (family_.index()) {
    case 0: return PotentialFamily::Quadratic;
    case 1: return PotentialFamily::QuarticDoubleWell;
    case 2: return PotentialFamily::GaussianBarrierWell;
    default: return PotentialFamily::Tabulated;
  }
}

std::string Potential::family_name() const {
  switch (family()) {
    case PotentialFamily::Quadratic: return "quadratic";
    case PotentialFamily::QuarticDoubleWell: return "quartic_double_well";
    case PotentialFamily::GaussianBarrierWell: return "gaussian_barrier_well";
    default: return "tabulated";
  }
}

double Potential::profile(double s) const {
  if (const auto* q = std::get_if<Quadratic>(&family_)) {
    return q->alpha * s * s;
  }
  if (const auto* w = std::get_if<QuarticDoubleWell>(&family_)) {
    const double t = (s / w->a) * (s / w->a) - 1.0;
    return w->h * t * t;
  }
  if (const auto* g = std::get_if<GaussianBarrierWell>(&family_)) {
    const double s2 = s * s;
    return g->delta_u * std::exp(-g->a * g->a * s2) + g->confinement * s2 * s2;
  }
  return std::get<std::shared_ptr<const CubicSpline>>(family_)->value(s);
}

double Potential::profile_deriv(double s) const {
  if (const auto* q = std::get_if<Quadratic>(&family_)) {
    return 2.0 * q->alpha * s;
  }
  if (const auto* w = std::get_if<QuarticDoubleWell>(&family_)) {
    const double a2 = w->a * w->a;
    return 4.0 * w->h * s * (s * s / a2 - 1.0) / a2;
  }
  if (const auto* g = std::get_if<GaussianBarrierWell>(&family_)) {
    const double a2 = g->a * g->a;
    return -2.0 * a2 * s * g->delta_u * std::exp(-a2 * s * s) +
           4.0 * g->confinement * s * s * s;
  }
  return std::get<std::shared_ptr<const CubicSpline>>(family_)->derivative(s);
}

double Potential::profile_second(double s) const {
  if (const auto* q = std::get_if<Quadratic>(&family_)) {
    return 2.0 * q->alpha;
  }
  if (const auto* w = std::get_if<QuarticDoubleWell>(&family_)) {
    const double a2 = w->a * w->a;
    return 4.0 * w->h * (3.0 * s * s / a2 - 1.0) / a2;
  }
  if (const auto* g = std::get_if<GaussianBarrierWell>(&family_)) {
    const double a2 = g->a * g->a;
    const double e = std::exp(-a2 * s * s);
    return -2.0 * a2 * g->delta_u * e * (1.0 - 2.0 * a2 * s * s) +
           12.0 * g->confinement * s * s;
  }
  return std::get<std::shared_ptr<const CubicSpline>>(family_)->second_derivative(s);
}

double Potential::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw DomainError("potential evaluated with wrong dimension");
  }
  double u = 0.0;
  for (double s : x) u += profile(s);
  return u;
}

std::vector<double> Potential::gradient(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw DomainError("potential gradient with wrong dimension");
  }
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = profile_deriv(x[i]);
  return g;
}

std::vector<double> Potential::hessian_diag(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw DomainError("potential hessian with wrong dimension");
  }
  std::vector<double> h(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) h[i] = profile_second(x[i]);
  return h;
}

double Potential::well_scale() const {
  if (const auto* q = std::get_if<Quadratic>(&family_)) {
    return 1.0 / std::sqrt(q->alpha);
  }
  if (const auto* w = std::get_if<QuarticDoubleWell>(&family_)) {
    return w->a;
  }
  if (const auto* g = std::get_if<GaussianBarrierWell>(&family_)) {
    // rough well position: balance of bump decay and the quartic wall
    return std::max(1.0 / g->a, std::pow(g->delta_u / g->confinement, 0.25) * 0.5);
  }
  const auto& s = std::get<std::shared_ptr<const CubicSpline>>(family_);
  return 0.5 * (s->hi() - s->lo()) / 8.0;
}

Region Potential::evaluable_range() const {
  if (const auto* s = std::get_if<std::shared_ptr<const CubicSpline>>(&family_)) {
    return {(*s)->lo(), (*s)->hi()};
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

std::vector<CriticalPoint> critical_points(const Potential& p, const Region& search) {
  if (p.dimension() != 1) {
    throw ConfigError("critical_points: one-dimensional potentials only");
  }
  if (!(search.lo < search.hi)) throw ConfigError("critical_points: empty search region");

  auto du = [&p](double s) { return p.profile_deriv(s); };

  // sign-change bracketing on a 10x refined scan of the region
  const int coarse = 256;
  const auto brackets = sign_change_brackets(du, search.lo, search.hi, 10 * coarse);

  double max_curv = 0.0;
  for (int i = 0; i <= coarse; ++i) {
    const double s = search.lo + (search.hi - search.lo) * i / coarse;
    max_curv = std::max(max_curv, std::abs(p.profile_second(s)));
  }
  const double degenerate_tol = 1e-8 * std::max(max_curv, 1e-300);

  std::vector<CriticalPoint> out;
  for (const auto& [a, b] : brackets) {
    const double root = bisect_root(du, a, b, 1e-12);
    if (!out.empty() && std::abs(root - out.back().location) < 1e-10) continue;
    const double curv = p.profile_second(root);
    if (std::abs(curv) < degenerate_tol) {
      throw NonMorseError("degenerate critical point (|u''| below tolerance) at x = " +
                              std::to_string(root),
                          root);
    }
    CriticalPoint cp;
    cp.location = root;
    cp.kind = curv > 0.0 ? CriticalKind::Minimum : CriticalKind::Maximum;
    cp.hessian_eigs = {curv};
    out.push_back(std::move(cp));
  }
  std::sort(out.begin(), out.end(),
            [](const CriticalPoint& l, const CriticalPoint& r) { return l.location < r.location; });
  return out;
}

double free_energy(const Potential& p, const Region& region, double beta) {
  if (!(beta > 0.0)) throw ConfigError("free_energy: beta must be > 0");
  if (!(region.lo < region.hi)) throw ConfigError("free_energy: empty region");

  // shift by the regional minimum so e^{-beta(U - s)} stays in range
  double shift = std::numeric_limits<double>::infinity();
  const int scan = 1024;
  for (int i = 0; i <= scan; ++i) {
    const double x = region.lo + (region.hi - region.lo) * i / scan;
    shift = std::min(shift, p.profile(x));
  }
  const double integral = adaptive_simpson(
      [&](double x) { return std::exp(-beta * (p.profile(x) - shift)); }, region.lo,
      region.hi, 1e-10);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw NumericError("free_energy: quadrature produced a non-positive integral");
  }
  return shift - std::log(integral) / beta;
}

}  // namespace wittengap
