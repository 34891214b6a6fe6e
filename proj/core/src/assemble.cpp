#include "wittengap/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "wittengap/csv.hpp"
#include "wittengap/numerics.hpp"

namespace wittengap {

namespace {

// exponent guard: keeps far-tail matrix entries finite for very steep
// potentials instead of overflowing to inf
constexpr double kMaxExponent = 600.0;

double safe_exp(double e) { return std::exp(std::min(e, kMaxExponent)); }

// node potentials u(x_i) for i = 0..n+1 (boundaries included)
std::vector<double> axis_potential(const WittenContext& ctx, const Grid& grid) {
  std::vector<double> u(grid.n + 2);
  const double h = grid.spacing();
  for (int i = 0; i <= grid.n + 1; ++i) u[i] = ctx.potential.profile(grid.lo + i * h);
  return u;
}

}  // namespace

AssembledOperator assemble_schrodinger(const WittenContext& ctx, const Grid& grid) {
  AssembledOperator op;
  op.kind = OperatorKind::Schrodinger;
  op.grid = grid;
  op.beta = ctx.beta;

  const int n = grid.n;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const auto u = axis_potential(ctx, grid);

  op.diag.resize(n);
  for (int i = 0; i < n; ++i) {
    // 2/h^2 + (w_{i-1} + w_{i+1} - 2 w_i)/(h^2 w_i), via expm1 of the local
    // potential differences; equals 2/h^2 + V(x_i) + O(h^2)
    const double ep = std::min(-0.5 * ctx.beta * (u[i + 2] - u[i + 1]), kMaxExponent);
    const double em = std::min(-0.5 * ctx.beta * (u[i] - u[i + 1]), kMaxExponent);
    op.diag[i] = (2.0 + std::expm1(ep) + std::expm1(em)) * inv_h2;
  }
  op.sub.assign(n - 1, -inv_h2);
  op.sup = op.sub;

  op.log_weight.resize(n + 2);
  for (int i = 0; i <= n + 1; ++i) op.log_weight[i] = -0.5 * ctx.beta * u[i];
  op.log_face.resize(n + 1);
  for (int i = 0; i <= n; ++i) op.log_face[i] = -0.5 * ctx.beta * (u[i] + u[i + 1]);
  return op;
}

AssembledOperator assemble_fokker_planck(const WittenContext& ctx, const Grid& grid) {
  if (grid.dim != 1) throw ConfigError("assemble_fokker_planck: d = 1 only");

  AssembledOperator op;
  op.kind = OperatorKind::FokkerPlanck;
  op.grid = grid;
  op.beta = ctx.beta;

  const int n = grid.n;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const auto u = axis_potential(ctx, grid);

  // (L f)_i couples f_{i+-1} through r = f e^{beta U}; every entry is a
  // face/node weight ratio, e.g. on f_{i+1}:
  //   c_{i+1/2} e^{beta U_{i+1}} = e^{+beta (U_{i+1} - U_i)/2}
  op.diag.resize(n);
  op.sub.resize(n - 1);
  op.sup.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double dp = safe_exp(0.5 * ctx.beta * (u[i + 1] - u[i + 2]));  // face i+1/2 on f_i
    const double dm = safe_exp(0.5 * ctx.beta * (u[i + 1] - u[i]));      // face i-1/2 on f_i
    op.diag[i] = -(dp + dm) * inv_h2;
    if (i + 1 < n) op.sup[i] = safe_exp(0.5 * ctx.beta * (u[i + 2] - u[i + 1])) * inv_h2;
    if (i > 0) op.sub[i - 1] = safe_exp(0.5 * ctx.beta * (u[i] - u[i + 1])) * inv_h2;
  }

  op.log_weight.resize(n + 2);
  for (int i = 0; i <= n + 1; ++i) op.log_weight[i] = -0.5 * ctx.beta * u[i];
  op.log_face.resize(n + 1);
  for (int i = 0; i <= n; ++i) op.log_face[i] = -0.5 * ctx.beta * (u[i] + u[i + 1]);
  return op;
}

AssembledOperator similarity_symmetrized(const AssembledOperator& fp) {
  if (fp.kind != OperatorKind::FokkerPlanck) {
    throw ConfigError("similarity_symmetrized expects a Fokker-Planck operator");
  }
  const int n = fp.grid.n;
  const double inv_h2 = 1.0 / (fp.grid.spacing() * fp.grid.spacing());

  AssembledOperator op;
  op.kind = OperatorKind::Schrodinger;
  op.grid = fp.grid;
  op.beta = fp.beta;
  op.log_weight = fp.log_weight;
  op.log_face = fp.log_face;

  // (-W^{-1} L W)_{ij} from the stored log weights; an independent
  // assembly route that reproduces H to rounding
  op.diag.resize(n);
  op.sub.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double lw = fp.log_weight[i + 1];
    const double t_right = safe_exp(fp.log_face[i + 1] - 2.0 * lw);
    const double t_left = safe_exp(fp.log_face[i] - 2.0 * lw);
    op.diag[i] = (t_right + t_left) * inv_h2;
    if (i + 1 < n) {
      op.sub[i] = -safe_exp(fp.log_face[i + 1] - fp.log_weight[i + 1] - fp.log_weight[i + 2]) * inv_h2;
    }
  }
  op.sup = op.sub;
  return op;
}

std::vector<double> apply_operator(const AssembledOperator& op, std::span<const double> v) {
  const int n = op.grid.n;
  if (op.grid.dim == 1) {
    if (static_cast<int>(v.size()) != n) throw ConfigError("apply_operator: size mismatch");
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      double s = op.diag[i] * v[i];
      if (i > 0) s += op.sub[i - 1] * v[i - 1];
      if (i + 1 < n) s += op.sup[i] * v[i + 1];
      y[i] = s;
    }
    return y;
  }
  // tensor action (A (x) I + I (x) A) on a row-major n x n sample
  if (v.size() != static_cast<std::size_t>(n) * n) {
    throw ConfigError("apply_operator: size mismatch");
  }
  std::vector<double> y(v.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * n + j;
      double s = (op.diag[i] + op.diag[j]) * v[id];
      if (i > 0) s += op.sub[i - 1] * v[id - n];
      if (i + 1 < n) s += op.sub[i] * v[id + n];
      if (j > 0) s += op.sub[j - 1] * v[id - 1];
      if (j + 1 < n) s += op.sub[j] * v[id + 1];
      y[id] = s;
    }
  }
  return y;
}

void dump_triplets(const AssembledOperator& op, std::ostream& os) {
  if (op.grid.dim != 1) throw ConfigError("dump_triplets: d = 1 only");
  const int n = op.grid.n;
  const long nnz = static_cast<long>(n) + 2L * (n - 1);
  os << "# " << n << " " << nnz << "\n";
  for (int i = 0; i < n; ++i) {
    if (i > 0) os << i << " " << i - 1 << " " << format_full(op.sub[i - 1]) << "\n";
    os << i << " " << i << " " << format_full(op.diag[i]) << "\n";
    if (i + 1 < n) os << i << " " << i + 1 << " " << format_full(op.sup[i]) << "\n";
  }
}

}  // namespace wittengap
