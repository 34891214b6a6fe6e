#include "wittengap/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wittengap/numerics.hpp"

namespace wittengap {

namespace {

// active-window cutoff: nodes with beta (U - U_min) beyond this are
// dynamically dead (their Gibbs weight underflows double precision)
constexpr double kActiveExponent = 600.0;

struct ActiveWindow {
  int begin = 0;  // first active node (0-based)
  int count = 0;
};

ActiveWindow active_window(std::span<const double> log_weight, int n) {
  // log_weight[i+1] = -beta U(x_i)/2 on nodes; active: beta(U - Umin) <= cutoff
  double best = -std::numeric_limits<double>::infinity();
  int ibest = 0;
  for (int i = 0; i < n; ++i) {
    if (log_weight[i + 1] > best) {
      best = log_weight[i + 1];
      ibest = i;
    }
  }
  const double floor = best - 0.5 * kActiveExponent;
  int lo = ibest, hi = ibest;
  while (lo > 0 && log_weight[lo] >= floor) --lo;
  while (hi + 1 < n && log_weight[hi + 2] >= floor) ++hi;
  return ActiveWindow{lo, hi - lo + 1};
}

}  // namespace

std::vector<double> gibbs_limit(const WittenContext& ctx, const Grid& grid,
                                std::span<const double> f0) {
  if (grid.dim != 1) throw ConfigError("gibbs_limit: d = 1 only");
  const int n = grid.n;
  if (static_cast<int>(f0.size()) != n) throw ConfigError("gibbs_limit: f0 size mismatch");
  const double h = grid.spacing();

  std::vector<double> gibbs(n);
  double umin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) umin = std::min(umin, ctx.potential.profile(grid.node(i)));
  for (int i = 0; i < n; ++i) {
    gibbs[i] = std::exp(-ctx.beta * (ctx.potential.profile(grid.node(i)) - umin));
  }

  // weighted-norm finiteness check (the Cauchy problem lives in L^2(e^{beta U} dx))
  double wnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    if (gibbs[i] > 0.0) {
      const double t = f0[i] * f0[i] / gibbs[i];
      wnorm += t;
    } else if (f0[i] != 0.0) {
      wnorm = std::numeric_limits<double>::infinity();
    }
  }
  if (!std::isfinite(wnorm * h)) {
    throw NumericError("gibbs_limit: initial condition has infinite weighted norm");
  }

  const double mass0 = trapezoid(f0, h) + 0.5 * h * (f0.front() + f0.back());
  const double z = trapezoid(gibbs, h) + 0.5 * h * (gibbs.front() + gibbs.back());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = gibbs[i] * mass0 / z;
  return out;
}

EvolutionTrace evolve(const AssembledOperator& fp, std::span<const double> f0,
                      const EvolveOptions& opts) {
  if (fp.kind != OperatorKind::FokkerPlanck) {
    throw ConfigError("evolve expects a Fokker-Planck operator");
  }
  if (!(opts.dt > 0.0)) throw ConfigError("evolve: dt must be > 0");
  if (!(opts.horizon >= opts.dt)) throw ConfigError("evolve: horizon must be >= dt");
  if (opts.sample_every < 1) throw ConfigError("evolve: sample_every must be >= 1");
  const int n = fp.grid.n;
  if (static_cast<int>(f0.size()) != n) throw ConfigError("evolve: f0 size mismatch");

  const double h = fp.grid.spacing();
  const ActiveWindow win = active_window(fp.log_weight, n);
  const int m = win.count;

  // Node Gibbs weights g_i = e^{-beta U_i} and face weights c_{i+1/2},
  // both referenced to the potential minimum so they stay representable.
  // The reference shift cancels in f = g r and in the relative mass, and
  // normalizes the reported weighted distance to min U = 0.
  double lmax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) lmax = std::max(lmax, fp.log_weight[win.begin + i + 1]);
  std::vector<long double> g(m), c(m + 1);
  for (int i = 0; i < m; ++i) {
    g[i] = expl(2.0L * static_cast<long double>(fp.log_weight[win.begin + i + 1] - lmax));
  }
  for (int i = 0; i <= m; ++i) {
    c[i] = expl(static_cast<long double>(fp.log_face[win.begin + i]) - 2.0L * static_cast<long double>(lmax));
  }

  // initial ratio variable r = f / g; reject data outside the weighted space
  std::vector<long double> r(m);
  for (int i = 0; i < m; ++i) {
    const double fi = f0[win.begin + i];
    r[i] = (fi == 0.0) ? 0.0L : static_cast<long double>(fi) / g[i];
    if (!std::isfinite(static_cast<double>(r[i]))) {
      throw NumericError("evolve: initial condition not in the weighted space L^2(e^{beta U})");
    }
  }
  double discarded_mass = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i < win.begin || i >= win.begin + m) discarded_mass += std::abs(f0[i]);
  }
  if (discarded_mass * h > 1e-12) {
    throw NumericError("evolve: initial condition carries mass outside the active window");
  }

  // Crank-Nicolson pencil on r:  (G - tau D) r+ = (G + tau D) r,
  // D = flux tridiagonal with face weights c (Dirichlet at the window ends)
  const long double tau = static_cast<long double>(opts.dt) / (2.0L * h * h);
  std::vector<long double> a_diag(m), a_sub(m > 1 ? m - 1 : 0);
  std::vector<long double> b_diag(m), b_sub(m > 1 ? m - 1 : 0);
  for (int i = 0; i < m; ++i) {
    const long double flux = c[i] + c[i + 1];
    a_diag[i] = g[i] + tau * flux;
    b_diag[i] = g[i] - tau * flux;
    if (i + 1 < m) {
      a_sub[i] = -tau * c[i + 1];
      b_sub[i] = tau * c[i + 1];
    }
  }
  // LDL^T factorization of the SPD matrix (G - tau D)
  std::vector<long double> ld(m), ll(m > 1 ? m - 1 : 0);
  ld[0] = a_diag[0];
  for (int i = 1; i < m; ++i) {
    if (!(ld[i - 1] > 0.0L)) throw NumericError("evolve: implicit matrix lost positivity");
    ll[i - 1] = a_sub[i - 1] / ld[i - 1];
    ld[i] = a_diag[i] - ll[i - 1] * a_sub[i - 1];
  }

  const long double sum_g = [&] {
    long double s = 0.0L;
    for (int i = 0; i < m; ++i) s += g[i];
    return s;
  }();
  long double mass_scale = 0.0L;
  for (int i = 0; i < m; ++i) mass_scale += g[i] * r[i];
  const long double r_inf = mass_scale / sum_g;

  auto record = [&](double t, EvolutionTrace& tr) {
    long double msum = 0.0L, dsum = 0.0L;
    for (int i = 0; i < m; ++i) {
      msum += g[i] * r[i];
      const long double d = r[i] - r_inf;
      dsum += d * d * g[i];
    }
    tr.times.push_back(t);
    tr.mass.push_back(static_cast<double>(msum) * h);
    tr.distance.push_back(std::sqrt(static_cast<double>(dsum) * h));
  };

  EvolutionTrace trace;
  record(0.0, trace);

  std::vector<double> snap_left = opts.snapshot_times;
  std::sort(snap_left.begin(), snap_left.end());

  const long steps = static_cast<long>(std::ceil(opts.horizon / opts.dt - 1e-12));
  std::vector<long double> rhs(m);
  for (long k = 0; k < steps; ++k) {
    // rhs = (G + tau D) r
    for (int i = 0; i < m; ++i) {
      long double s = b_diag[i] * r[i];
      if (i > 0) s += b_sub[i - 1] * r[i - 1];
      if (i + 1 < m) s += b_sub[i] * r[i + 1];
      rhs[i] = s;
    }
    // forward/backward substitution
    for (int i = 1; i < m; ++i) rhs[i] -= ll[i - 1] * rhs[i - 1];
    rhs[m - 1] /= ld[m - 1];
    for (int i = m - 2; i >= 0; --i) rhs[i] = rhs[i] / ld[i] - ll[i] * rhs[i + 1];
    r.swap(rhs);

    const double t = (k + 1) * opts.dt;
    if ((k + 1) % opts.sample_every == 0 || k + 1 == steps) record(t, trace);
    while (!snap_left.empty() && t + 0.5 * opts.dt >= snap_left.front()) {
      std::vector<double> f(n, 0.0);
      for (int i = 0; i < m; ++i) f[win.begin + i] = static_cast<double>(g[i] * r[i]);
      trace.snapshots.emplace_back(t, std::move(f));
      snap_left.erase(snap_left.begin());
    }
  }
  return trace;
}

DecayFit relaxation_rate(const EvolutionTrace& trace, double t_begin, double t_end) {
  if (!(t_begin < t_end)) throw ConfigError("relaxation_rate: empty window");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < t_begin || t > t_end) continue;
    const double d = trace.distance[i];
    if (!(d > 1e-300)) {
      throw NumericError(
          "relaxation_rate: distance underflowed inside the window (already "
          "converged); fit an earlier window");
    }
    ts.push_back(t);
    ys.push_back(-std::log(d));
  }
  if (ts.size() < 2) throw ConfigError("relaxation_rate: window contains fewer than 2 samples");
  const LinearFit fit = linear_fit(ts, ys);
  return DecayFit{fit.slope, fit.rms_residual};
}

std::vector<double> gibbs_well_restriction(const WittenContext& ctx, const Grid& grid,
                                           const Region& well) {
  if (grid.dim != 1) throw ConfigError("gibbs_well_restriction: d = 1 only");
  const int n = grid.n;
  std::vector<double> f(n, 0.0);
  double umin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    if (x >= well.lo && x <= well.hi) umin = std::min(umin, ctx.potential.profile(x));
  }
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    if (x >= well.lo && x <= well.hi) {
      f[i] = std::exp(-ctx.beta * (ctx.potential.profile(x) - umin));
    }
  }
  const double mass = trapezoid(f, grid.spacing());
  if (!(mass > 0.0)) throw ConfigError("gibbs_well_restriction: empty well region");
  for (double& v : f) v /= mass;
  return f;
}

std::vector<double> gibbs_modulated_bump(const WittenContext& ctx, const Grid& grid,
                                         double center, double width) {
  if (grid.dim != 1) throw ConfigError("gibbs_modulated_bump: d = 1 only");
  if (!(width > 0.0)) throw ConfigError("gibbs_modulated_bump: width must be > 0");
  const int n = grid.n;
  std::vector<double> f(n);
  double umin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) umin = std::min(umin, ctx.potential.profile(grid.node(i)));
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    const double z = (x - center) / width;
    f[i] = std::exp(-ctx.beta * (ctx.potential.profile(x) - umin) - 0.5 * z * z);
  }
  const double mass = trapezoid(f, grid.spacing());
  if (!(mass > 0.0)) throw NumericError("gibbs_modulated_bump: bump has no mass on the grid");
  for (double& v : f) v /= mass;
  return f;
}

}  // namespace wittengap
