#include "wittengap/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "wittengap/errors.hpp"

namespace wittengap {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {  // two Gram-Schmidt passes
    for (const auto& q : basis) axpy(-dot(v, q), q, v);
  }
}

}  // namespace

TridiagEigenResult lanczos_lowest(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
    long n, int k, const LanczosOptions& opts) {
  if (k < 1 || k > n) throw ConfigError("lanczos: bad pair count");

  const long cap = opts.iteration_cap > 0
                       ? opts.iteration_cap
                       : 10L * k * static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n))));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<std::vector<double>> locked;      // converged Ritz vectors
  std::vector<double> locked_values;
  std::vector<double> locked_residuals;

  std::vector<double> w(n), av(n);
  long iterations = 0;
  double scale_seen = 1.0;
  double best_unconverged_residual = std::numeric_limits<double>::infinity();

  while (static_cast<int>(locked.size()) < k && iterations < cap) {
    // fresh start vector, deflated against everything already locked
    std::vector<double> q(n);
    for (auto& x : q) x = unit(rng);
    orthogonalize(q, locked);
    const double nq = norm2(q);
    if (!(nq > 0.0)) continue;
    for (auto& x : q) x /= nq;

    std::vector<std::vector<double>> basis;
    basis.push_back(q);
    std::vector<double> alpha, beta;

    const int m_max = static_cast<int>(std::min<long>(opts.max_basis, n));
    bool cycle_done = false;
    for (int m = 0; m < m_max && !cycle_done && iterations < cap; ++m) {
      ++iterations;
      apply(basis[m], av);
      w = av;
      const double a = dot(w, basis[m]);
      alpha.push_back(a);
      axpy(-a, basis[m], w);
      if (m > 0) axpy(-beta[m - 1], basis[m - 1], w);
      // full reorthogonalization against the basis and the locked set
      orthogonalize(w, basis);
      orthogonalize(w, locked);
      const double b = norm2(w);

      scale_seen = std::max(scale_seen, std::abs(a) + (m > 0 ? beta[m - 1] : 0.0) + b);
      const double resid_tol = opts.tol * scale_seen;

      // Ritz extraction every few steps (and on breakdown/cycle end)
      const bool last = (b <= 1e-14 * scale_seen) || (m + 1 == m_max);
      if (last || (m >= 2 && m % 8 == 0)) {
        const int mm = m + 1;
        auto ritz = lowest_eigenpairs_tridiagonal(
            std::span<const double>(alpha.data(), mm),
            std::span<const double>(beta.data(), mm - 1),
            std::min<int>(mm, k - static_cast<int>(locked.size())));
        // residual of Ritz pair i: |beta_m * s_{m,i}|
        bool lowest_converged = false;
        const double r0 = (mm == static_cast<int>(n - locked.size()))
                              ? 0.0
                              : b * std::abs(ritz.vectors[0][mm - 1]);
        best_unconverged_residual = std::min(best_unconverged_residual, r0);
        if (r0 <= resid_tol || b <= 1e-14 * scale_seen) lowest_converged = true;

        if (lowest_converged || last) {
          // lock every Ritz pair that meets the tolerance, lowest first
          for (std::size_t i = 0; i < ritz.values.size() &&
                                  static_cast<int>(locked.size()) < k;
               ++i) {
            const double ri = (mm == static_cast<int>(n - locked.size()))
                                  ? 0.0
                                  : b * std::abs(ritz.vectors[i][mm - 1]);
            if (ri > resid_tol && !(b <= 1e-14 * scale_seen)) break;
            std::vector<double> y(n, 0.0);
            for (int t = 0; t < mm; ++t) axpy(ritz.vectors[i][t], basis[t], y);
            orthogonalize(y, locked);
            const double ny = norm2(y);
            if (!(ny > 1e-8)) continue;  // collapsed onto the locked set
            for (auto& x : y) x /= ny;
            // explicit residual on the full operator
            apply(y, av);
            const double lam = dot(y, av);
            double rr = 0.0;
            for (long t = 0; t < n; ++t) {
              const double r = av[t] - lam * y[t];
              rr += r * r;
            }
            locked.push_back(std::move(y));
            locked_values.push_back(lam);
            locked_residuals.push_back(std::sqrt(rr));
          }
          cycle_done = true;
        }
      }

      if (b <= 1e-14 * scale_seen) break;  // invariant subspace exhausted
      if (!cycle_done) {
        beta.push_back(b);
        std::vector<double> next = w;
        for (auto& x : next) x /= b;
        basis.push_back(std::move(next));
      }
    }
  }

  if (static_cast<int>(locked.size()) < k) {
    throw ConvergenceError("lanczos: iteration cap reached with " +
                               std::to_string(locked.size()) + "/" + std::to_string(k) +
                               " converged pairs",
                           best_unconverged_residual);
  }

  // sort locked pairs ascending
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return locked_values[a] < locked_values[b]; });

  TridiagEigenResult res;
  res.values.resize(k);
  res.vectors.resize(k);
  res.residuals.resize(k);
  res.converged.assign(k, true);
  for (int i = 0; i < k; ++i) {
    res.values[i] = locked_values[order[i]];
    res.vectors[i] = std::move(locked[order[i]]);
    res.residuals[i] = locked_residuals[order[i]];
  }
  return res;
}

}  // namespace wittengap
