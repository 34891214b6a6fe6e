#include "wittengap/semiclassics.hpp"

#include <algorithm>
#include <cmath>

#include "wittengap/numerics.hpp"

namespace wittengap {

namespace {

double asymmetry_tolerance(double barrier) { return 1e-8 * std::max(std::abs(barrier), 1.0); }

void require_symmetric(const WittenContext& ctx, const WellPartition& p) {
  const double ul = ctx.potential.profile(p.left_minimum);
  const double ur = ctx.potential.profile(p.right_minimum);
  const double du = ctx.potential.profile(p.barrier_x) - std::min(ul, ur);
  if (std::abs(ul - ur) > asymmetry_tolerance(du)) {
    throw ConfigError("asymmetric wells: |U(left) - U(right)| = " +
                      std::to_string(std::abs(ul - ur)) + " exceeds the symmetry tolerance");
  }
}

// first V = 0 crossing moving from x0 toward direction dir, within max_span
double v_crossing(const WittenContext& ctx, double x0, double dir, double max_span) {
  auto v = [&ctx](double s) { return effective_potential_axis(ctx, s); };
  const double v0 = v(x0);
  const int steps = 4096;
  double prev = x0;
  for (int i = 1; i <= steps; ++i) {
    const double x = x0 + dir * max_span * i / steps;
    if ((v(x) > 0.0) != (v0 > 0.0)) return bisect_root(v, std::min(prev, x), std::max(prev, x), 1e-13);
    prev = x;
  }
  throw NumericError("effective potential does not change sign within the scan span");
}

}  // namespace

double bohr_sommerfeld_action(const WittenContext& ctx, const Region& well) {
  if (!(well.lo < well.hi)) throw ConfigError("bohr_sommerfeld_action: empty well region");
  auto v = [&ctx](double s) { return effective_potential_axis(ctx, s); };

  // empty integration set when V > 0 everywhere in the well
  bool any_negative = false;
  const int scan = 2048;
  for (int i = 0; i <= scan && !any_negative; ++i) {
    any_negative = v(well.lo + (well.hi - well.lo) * i / scan) <= 0.0;
  }
  if (!any_negative) return 0.0;

  const double integral = adaptive_simpson(
      [&v](double s) { return std::sqrt(std::max(-v(s), 0.0)); }, well.lo, well.hi, 1e-10);
  return integral / M_PI;
}

double barrier_height(const WittenContext& ctx, const WellPartition& partition) {
  const double ub = ctx.potential.profile(partition.barrier_x);
  const double ul = ctx.potential.profile(partition.left_minimum);
  return ub - ul;
}

WkbGeometry wkb_geometry(const WittenContext& ctx, const WellPartition& partition) {
  auto v = [&ctx](double s) { return effective_potential_axis(ctx, s); };
  const double vb = v(partition.barrier_x);
  if (!(vb > 0.0)) {
    throw NumericError("barrier not semiclassically resolved (V(x_b) <= 0); increase beta");
  }
  WkbGeometry g;
  g.p0 = std::sqrt(vb);

  // connected component of {V > 0} containing the barrier, i.e. the set
  // where (beta/2) U'^2 > U''
  const double span = std::max(partition.right_minimum - partition.left_minimum, 1e-6);
  const double t_left = v_crossing(ctx, partition.barrier_x, -1.0, span);
  const double t_right = v_crossing(ctx, partition.barrier_x, +1.0, span);
  g.action = adaptive_simpson([&v](double s) { return std::sqrt(std::max(v(s), 0.0)); },
                              t_left, t_right, 1e-10);

  // classically allowed length of the right well: the V <= 0 component
  const double outer = v_crossing(ctx, t_right + 1e-12, +1.0, 4.0 * span);
  g.vol = outer - t_right;
  return g;
}

double wkb_splitting(const WittenContext& ctx, const WellPartition& partition) {
  require_symmetric(ctx, partition);
  const WkbGeometry g = wkb_geometry(ctx, partition);
  return g.p0 / g.vol * std::exp(-g.action);
}

double arrhenius_rate(const WittenContext& ctx, const WellPartition& partition) {
  require_symmetric(ctx, partition);
  const WkbGeometry g = wkb_geometry(ctx, partition);
  const double du = barrier_height(ctx, partition);
  return g.p0 / g.vol * std::exp(-ctx.beta * du);
}

Region thermal_barrier_window(const WittenContext& ctx, const WellPartition& partition) {
  const double level = ctx.potential.profile(partition.barrier_x) - 1.0 / ctx.beta;
  auto f = [&](double s) { return ctx.potential.profile(s) - level; };
  if (f(partition.barrier_x) <= 0.0) {
    // barrier shallower than the thermal energy: use the whole inter-well span
    return Region{partition.left_minimum, partition.right_minimum};
  }
  const double lo =
      (f(partition.left_minimum) >= 0.0)
          ? partition.left_minimum
          : bisect_root(f, partition.left_minimum, partition.barrier_x, 1e-13);
  const double hi =
      (f(partition.right_minimum) >= 0.0)
          ? partition.right_minimum
          : bisect_root(f, partition.barrier_x, partition.right_minimum, 1e-13);
  return Region{lo, hi};
}

double transition_state_free_energy(const WittenContext& ctx, const Region& barrier) {
  if (!(barrier.lo < barrier.hi)) throw ConfigError("transition state: empty barrier region");
  // shift by the barrier-top maximum so e^{+beta(U - s)} stays in range
  double shift = -std::numeric_limits<double>::infinity();
  const int scan = 1024;
  for (int i = 0; i <= scan; ++i) {
    const double x = barrier.lo + (barrier.hi - barrier.lo) * i / scan;
    shift = std::max(shift, ctx.potential.profile(x));
  }
  const double integral = adaptive_simpson(
      [&](double x) { return std::exp(ctx.beta * (ctx.potential.profile(x) - shift)); },
      barrier.lo, barrier.hi, 1e-10);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw NumericError("transition state: barrier quadrature failed");
  }
  // e^{-beta F1} = 1 / int e^{beta U}  =>  F1 = shift + ln(integral)/beta
  return shift + std::log(integral) / ctx.beta;
}

double eyring_rate(const WittenContext& ctx, const Region& well_region,
                   const Region& barrier_region) {
  if (std::max(well_region.lo, barrier_region.lo) <
      std::min(well_region.hi, barrier_region.hi)) {
    throw ConfigError("eyring_rate: well and barrier regions overlap");
  }
  const double f0 = free_energy(ctx.potential, well_region, ctx.beta);
  const double f1 = transition_state_free_energy(ctx, barrier_region);
  return std::exp(-ctx.beta * (f1 - f0));
}

}  // namespace wittengap
