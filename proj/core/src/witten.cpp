#include "wittengap/witten.hpp"

#include <algorithm>
#include <cmath>

#include "wittengap/numerics.hpp"

namespace wittengap {

double effective_potential_axis(const WittenContext& ctx, double s) {
  const double du = ctx.potential.profile_deriv(s);
  const double ddu = ctx.potential.profile_second(s);
  return -0.5 * ctx.beta * ddu + 0.25 * ctx.beta * ctx.beta * du * du;
}

double effective_potential(const WittenContext& ctx, std::span<const double> x) {
  double v = 0.0;
  for (double s : x) v += effective_potential_axis(ctx, s);
  return v;
}

std::vector<double> ground_state(const WittenContext& ctx, const Grid& grid) {
  if (grid.dim != 1 && grid.dim != 2) throw ConfigError("ground_state: dim must be 1 or 2");
  const int n = grid.n;

  // log psi ~ -beta u(x)/2 per axis; normalize in log-space
  std::vector<double> axis_log(n);
  double mx = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    axis_log[i] = -0.5 * ctx.beta * ctx.potential.profile(grid.node(i));
    mx = std::max(mx, axis_log[i]);
  }
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) sum_sq += std::exp(2.0 * (axis_log[i] - mx));
  const double log_axis_norm = mx + 0.5 * std::log(sum_sq) + 0.5 * std::log(grid.spacing());

  if (grid.dim == 1) {
    std::vector<double> psi(n);
    for (int i = 0; i < n; ++i) psi[i] = std::exp(axis_log[i] - log_axis_norm);
    return psi;
  }
  // separable: psi0(x, y) is the product of the axis factors
  std::vector<double> psi(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      psi[static_cast<std::size_t>(i) * n + j] =
          std::exp(axis_log[i] + axis_log[j] - 2.0 * log_axis_norm);
    }
  }
  return psi;
}

namespace {

// face term [ e^{+b dU/4} psi_r - e^{-b dU/4} psi_l ] / h; dU local only,
// so the exponents stay O(beta h U')
inline double face_difference(double beta, double u_l, double u_r, double psi_l,
                              double psi_r, double h) {
  const double e = 0.25 * beta * (u_r - u_l);
  return (std::exp(e) * psi_r - std::exp(-e) * psi_l) / h;
}

}  // namespace

double quadratic_form_check(const WittenContext& ctx, const Grid& grid,
                            std::span<const double> psi) {
  if (static_cast<long>(psi.size()) != grid.total_nodes()) {
    throw ConfigError("quadratic_form_check: psi size does not match grid");
  }
  const double h = grid.spacing();
  const double beta = ctx.beta;
  const auto& pot = ctx.potential;

  auto u_at = [&](int i) {  // axis potential incl. boundary nodes
    return pot.profile(grid.lo + (i + 1) * h);
  };

  double q = 0.0;
  if (grid.dim == 1) {
    const int n = grid.n;
    for (int f = -1; f < n; ++f) {  // faces between nodes f and f+1 (Dirichlet ends)
      const double psi_l = (f < 0) ? 0.0 : psi[f];
      const double psi_r = (f + 1 < n) ? psi[f + 1] : 0.0;
      const double s = face_difference(beta, u_at(f), u_at(f + 1), psi_l, psi_r, h);
      q += s * s;
    }
    return q;
  }

  const int n = grid.n;
  auto at = [&](int i, int j) -> double {
    if (i < 0 || i >= n || j < 0 || j >= n) return 0.0;
    return psi[static_cast<std::size_t>(i) * n + j];
  };
  // U is separable, so a face difference along an axis only needs that axis' profile
  for (int i = -1; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = face_difference(beta, u_at(i), u_at(i + 1), at(i, j), at(i + 1, j), h);
      q += s * s;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = -1; j < n; ++j) {
      const double s = face_difference(beta, u_at(j), u_at(j + 1), at(i, j), at(i, j + 1), h);
      q += s * s;
    }
  }
  return q;
}

}  // namespace wittengap
