#include "wittengap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wittengap/lanczos.hpp"
#include "wittengap/numerics.hpp"
#include "wittengap/tridiag_eigen.hpp"

namespace wittengap {

namespace {

// deterministic eigenvector sign: largest-magnitude entry positive
void fix_sign(std::vector<double>& v) {
  double mx = 0.0;
  double sign = 1.0;
  for (double x : v) {
    if (std::abs(x) > mx) {
      mx = std::abs(x);
      sign = (x >= 0.0) ? 1.0 : -1.0;
    }
  }
  if (sign < 0.0) {
    for (double& x : v) x = -x;
  }
}

}  // namespace

SpectrumResult lowest_eigenpairs(const AssembledOperator& op, int k) {
  if (k < 2) throw ConfigError("lowest_eigenpairs: need k >= 2");
  if (k > op.grid.total_nodes()) throw ConfigError("lowest_eigenpairs: k exceeds matrix size");

  TridiagEigenResult r;
  if (op.grid.dim == 1) {
    const AssembledOperator* sym = &op;
    AssembledOperator symmetrized;
    if (op.kind == OperatorKind::FokkerPlanck) {
      symmetrized = similarity_symmetrized(op);
      sym = &symmetrized;
    }
    r = lowest_eigenpairs_tridiagonal(sym->diag, sym->sub, k);
    int bad = 0;
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      if (!r.converged[j]) {
        ++bad;
        worst = std::max(worst, r.residuals[j]);
      }
    }
    if (bad > 0) {
      throw ConvergenceError("tridiagonal eigensolver left " + std::to_string(bad) +
                                 " pair(s) above tolerance; refine the grid",
                             worst);
    }
  } else {
    if (op.kind != OperatorKind::Schrodinger) {
      throw ConfigError("d = 2 eigensolves support the Schrodinger assembly only");
    }
    auto apply = [&op](const std::vector<double>& v, std::vector<double>& out) {
      out = apply_operator(op, v);
    };
    r = lanczos_lowest(apply, op.grid.total_nodes(), k);
  }

  SpectrumResult res;
  res.eigenvalues = std::move(r.values);
  res.eigenvectors = std::move(r.vectors);
  res.residuals = std::move(r.residuals);
  res.converged = std::move(r.converged);
  for (auto& v : res.eigenvectors) fix_sign(v);
  return res;
}

double spectral_gap(const SpectrumResult& result) {
  if (result.eigenvalues.size() < 2) {
    throw ConfigError("spectral_gap: need at least two eigenpairs");
  }
  if (!result.converged[0] || !result.converged[1]) {
    throw ConvergenceError("spectral_gap: first two pairs not converged",
                           std::max(result.residuals[0], result.residuals[1]));
  }
  return result.eigenvalues[1] - result.eigenvalues[0];
}

WellPartition auto_partition(const Potential& p, const Region& search) {
  const auto cps = critical_points(p, search);
  if (cps.size() != 3 || cps[0].kind != CriticalKind::Minimum ||
      cps[1].kind != CriticalKind::Maximum || cps[2].kind != CriticalKind::Minimum) {
    throw ConfigError(
        "auto partition needs exactly three critical points (minimum, maximum, "
        "minimum); found " +
        std::to_string(cps.size()));
  }
  WellPartition part;
  part.left_minimum = cps[0].location;
  part.barrier_x = cps[1].location;
  part.right_minimum = cps[2].location;
  part.well = Region{search.lo, part.barrier_x};
  return part;
}

std::vector<double> theta_profile(const WittenContext& ctx, const Grid& grid,
                                  const WellPartition& partition) {
  if (grid.dim != 1) throw ConfigError("theta_profile: d = 1 only");
  const int n = grid.n;
  const double beta = ctx.beta;
  const double xl = partition.left_minimum;
  const double xr = partition.right_minimum;
  if (!(xl < partition.barrier_x && partition.barrier_x < xr)) {
    throw ConfigError("theta_profile: barrier must lie between the minima");
  }

  // cumulative trapezoid of e^{beta U} between the minima, in log-space
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_cum(n, neg_inf);
  double acc = neg_inf;
  double prev_log_u = 0.0;
  bool have_prev = false;
  double prev_x = xl;
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    if (x < xl || x > xr) continue;
    const double log_u = beta * ctx.potential.profile(x);
    if (have_prev) {
      // log of the segment integral (x_prev, x): trapezoid
      const double seg = std::log(0.5 * (x - prev_x)) + log_add_exp(prev_log_u, log_u);
      acc = log_add_exp(acc, seg);
    }
    log_cum[i] = acc;
    prev_log_u = log_u;
    prev_x = x;
    have_prev = true;
  }
  const double log_total = acc;
  if (log_total == neg_inf) throw NumericError("theta_profile: no nodes between the minima");

  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    if (x < xl) {
      theta[i] = 1.0;
    } else if (x > xr) {
      theta[i] = -1.0;
    } else {
      theta[i] = (log_cum[i] == neg_inf) ? 1.0 : 1.0 - 2.0 * std::exp(log_cum[i] - log_total);
    }
  }
  return theta;
}

double surface_formula_e1(std::span<const double> psi0, std::span<const double> psi1,
                          const WellPartition& partition, const Grid& grid) {
  if (grid.dim != 1) throw ConfigError("surface_formula_e1: d = 1 only");
  const int n = grid.n;
  if (static_cast<int>(psi0.size()) != n || static_cast<int>(psi1.size()) != n) {
    throw ConfigError("surface_formula_e1: eigenvector size mismatch");
  }
  const double h = grid.spacing();

  int ib = static_cast<int>(std::lround((partition.barrier_x - grid.lo) / h)) - 1;
  ib = std::clamp(ib, 2, n - 3);

  // fix the arbitrary eigenvector signs: psi0 positive, psi1 positive on the
  // left well, making the returned value invariant under psi -> -psi
  double s0 = 1.0, mx0 = 0.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(psi0[i]) > mx0) {
      mx0 = std::abs(psi0[i]);
      s0 = psi0[i] >= 0.0 ? 1.0 : -1.0;
    }
  }
  double s1 = 1.0, mx1 = 0.0;
  for (int i = 0; i < ib; ++i) {
    if (std::abs(psi1[i]) > mx1) {
      mx1 = std::abs(psi1[i]);
      s1 = psi1[i] >= 0.0 ? 1.0 : -1.0;
    }
  }

  // psi1' at the barrier node, 4th-order central stencil
  const double d1 = s1 *
                    (-psi1[ib + 2] + 8.0 * psi1[ib + 1] - 8.0 * psi1[ib - 1] + psi1[ib - 2]) /
                    (12.0 * h);

  // trapezoid of psi1 psi0 over the well region
  double denom = 0.0;
  bool prev_in = false;
  double prev_v = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    const bool in = (x >= partition.well.lo && x <= partition.well.hi);
    const double v = s0 * psi0[i] * s1 * psi1[i];
    if (in && prev_in) denom += 0.5 * h * (prev_v + v);
    prev_in = in;
    prev_v = v;
  }
  if (std::abs(denom) < 1e-300) {
    throw NumericError("surface_formula_e1: degenerate partition (vanishing overlap)");
  }
  return -s0 * psi0[ib] * d1 / denom;
}

}  // namespace wittengap
