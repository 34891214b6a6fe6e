#include "wittengap/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "wittengap/errors.hpp"

namespace wittengap {

namespace {

// deterministic start vectors for inverse iteration
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  double next_unit() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  }
};

struct TridiagLU {
  // dgttrf-style factorization of (T - shift I) with partial pivoting;
  // near-zero pivots are floored at eps*||T|| so singular shifts (exact
  // eigenvalues) give the bounded growth inverse iteration relies on
  std::vector<double> dl, d, du, du2;
  std::vector<int> pivot;

  TridiagLU(std::span<const double> diag, std::span<const double> off, double shift,
            double pivmin) {
    const int n = static_cast<int>(diag.size());
    d.resize(n);
    dl.assign(n > 1 ? n - 1 : 0, 0.0);
    du.assign(n > 1 ? n - 1 : 0, 0.0);
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    pivot.assign(n, 0);
    for (int i = 0; i < n; ++i) d[i] = diag[i] - shift;
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = off[i];

    auto floor_pivot = [pivmin](double v) {
      if (std::abs(v) < pivmin) return v < 0.0 ? -pivmin : pivmin;
      return v;
    };
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        pivot[i] = 0;
        d[i] = floor_pivot(d[i]);
        const double m = dl[i] / d[i];
        dl[i] = m;
        d[i + 1] -= m * du[i];
        if (i + 2 < n) du2[i] = 0.0;
      } else {
        pivot[i] = 1;
        const double m = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = m;
        const double tmp = d[i + 1];
        d[i + 1] = du[i] - m * tmp;
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -m * du[i + 1];
        }
        du[i] = tmp;
      }
    }
    if (!d.empty()) d[n - 1] = floor_pivot(d[n - 1]);
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (pivot[i] == 0) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl[i] * b[i];
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = b[i];
      if (i + 1 < n) s -= du[i] * b[i + 1];
      if (i + 2 < n) s -= du2[i] * b[i + 2];
      b[i] = s / d[i];
    }
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

int sturm_count(std::span<const double> diag, std::span<const double> off, double x) {
  const int n = static_cast<int>(diag.size());
  // pivot floor keeps the recurrence finite through exact zeros
  double scale = 0.0;
  for (int i = 0; i + 1 < n; ++i) scale = std::max(scale, std::abs(off[i]));
  const double pivmin =
      std::max(scale * scale * std::numeric_limits<double>::min() * 16.0,
               std::numeric_limits<double>::min() * 16.0);
  int count = 0;
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    d = diag[i] - x - ((i > 0) ? off[i - 1] * off[i - 1] / d : 0.0);
    if (std::abs(d) < pivmin) d = -pivmin;  // zero pivots count as negative
    if (d < 0.0) ++count;
  }
  return count;
}

TridiagEigenResult lowest_eigenpairs_tridiagonal(std::span<const double> diag,
                                                 std::span<const double> off, int k) {
  const int n = static_cast<int>(diag.size());
  if (k < 1 || k > n) throw ConfigError("tridiagonal eigensolver: bad pair count");
  if (static_cast<int>(off.size()) != n - 1) {
    throw ConfigError("tridiagonal eigensolver: off-diagonal size mismatch");
  }

  // Gershgorin enclosure
  double glo = std::numeric_limits<double>::infinity();
  double ghi = -glo;
  double norm_t = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    glo = std::min(glo, diag[i] - r);
    ghi = std::max(ghi, diag[i] + r);
    norm_t = std::max(norm_t, std::abs(diag[i]) + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();

  TridiagEigenResult res;
  res.values.resize(k);
  for (int j = 0; j < k; ++j) {
    // bisect until [a, b] brackets the j-th eigenvalue at rounding width
    double a = glo, b = ghi;
    for (int it = 0; it < 210; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (sturm_count(diag, off, m) <= j) a = m; else b = m;
      if (b - a <= 2.0 * eps * (std::abs(a) + std::abs(b)) + 1e-300) break;
    }
    res.values[j] = 0.5 * (a + b);
  }

  // inverse iteration, clusters share reorthogonalization
  const double cluster_tol = 1e3 * eps * std::max(norm_t, 1e-300);
  const double conv_tol = 64.0 * eps * std::max(norm_t, 1e-300);
  res.vectors.assign(k, {});
  res.residuals.assign(k, 0.0);
  res.converged.assign(k, false);

  const double pivmin = std::max(64.0 * eps * norm_t, std::numeric_limits<double>::min() * 64.0);
  int cluster_begin = 0;
  for (int j = 0; j < k; ++j) {
    if (j > 0 && res.values[j] - res.values[j - 1] > cluster_tol) cluster_begin = j;

    SplitMix64 rng(0x5df442u + 1315423911ull * static_cast<std::uint64_t>(j));
    std::vector<double> v(n);
    auto reseed = [&] {
      for (double& x : v) x = rng.next_unit();
      const double nv = norm2(v);
      for (double& x : v) x /= nv;
    };
    reseed();

    double best_res = std::numeric_limits<double>::infinity();
    std::vector<double> best_v = v;
    double best_val = res.values[j];
    // separate shifts of clustered eigenvalues so each LU is distinct
    double shift = res.values[j] + (j - cluster_begin) * 2.0 * cluster_tol;
    TridiagLU lu(diag, off, shift, pivmin);
    for (int it = 0; it < 10; ++it) {
      std::vector<double> w = v;
      lu.solve(w);
      for (int c = cluster_begin; c < j; ++c) {  // project off the cluster mates
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += w[i] * res.vectors[c][i];
        for (int i = 0; i < n; ++i) w[i] -= dot * res.vectors[c][i];
      }
      const double nw = norm2(w);
      if (!(nw > 0.0) || !std::isfinite(nw)) {
        // singular-solve overflow: back off the shift slightly and restart
        shift += (it + 1) * 8.0 * pivmin;
        lu = TridiagLU(diag, off, shift, pivmin);
        reseed();
        continue;
      }
      for (double& x : w) x /= nw;
      v = w;

      // Rayleigh quotient and residual
      double rq = 0.0;
      for (int i = 0; i < n; ++i) {
        double tv = diag[i] * v[i];
        if (i > 0) tv += off[i - 1] * v[i - 1];
        if (i + 1 < n) tv += off[i] * v[i + 1];
        rq += v[i] * tv;
      }
      double rn = 0.0;
      for (int i = 0; i < n; ++i) {
        double tv = diag[i] * v[i];
        if (i > 0) tv += off[i - 1] * v[i - 1];
        if (i + 1 < n) tv += off[i] * v[i + 1];
        const double r = tv - rq * v[i];
        rn += r * r;
      }
      rn = std::sqrt(rn);
      if (std::isfinite(rn) && rn < best_res) {
        best_res = rn;
        best_v = v;
        best_val = rq;
      }
      if (rn <= conv_tol) break;
    }

    res.vectors[j] = std::move(best_v);
    res.residuals[j] = best_res;
    res.converged[j] = best_res <= 16.0 * conv_tol;
    // keep the Rayleigh-refined value unless it drifted out of the bisection bracket
    if (std::abs(best_val - res.values[j]) <= 16.0 * cluster_tol + 1e4 * eps * norm_t) {
      res.values[j] = best_val;
    }
  }

  // Rayleigh refinement can reorder clustered values; restore ascending order
  std::vector<int> order(k);
  for (int j = 0; j < k; ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&res](int a, int b) { return res.values[a] < res.values[b]; });
  TridiagEigenResult sorted;
  sorted.values.resize(k);
  sorted.vectors.resize(k);
  sorted.residuals.resize(k);
  sorted.converged.resize(k);
  for (int j = 0; j < k; ++j) {
    sorted.values[j] = res.values[order[j]];
    sorted.vectors[j] = std::move(res.vectors[order[j]]);
    sorted.residuals[j] = res.residuals[order[j]];
    sorted.converged[j] = res.converged[order[j]];
  }
  return sorted;
}

}  // namespace wittengap
