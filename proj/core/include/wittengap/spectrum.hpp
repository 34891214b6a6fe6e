#pragma once

// Lowest eigenpairs of assembled operators, the separating-point (d = 1)
// surface formula for the splitting E1, and the theta transition profile.

#include <span>
#include <vector>

#include "wittengap/assemble.hpp"
#include "wittengap/potential.hpp"
#include "wittengap/witten.hpp"

namespace wittengap {

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, E0 <= E1 <= ...
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> residuals;
  std::vector<bool> converged;
};

/// Lowest k eigenpairs.  d = 1 uses the direct symmetric-tridiagonal solver
/// (bisection + inverse iteration); d = 2 uses restarted Lanczos with full
/// reorthogonalization.  Fokker-Planck operators are solved through their
/// similarity-symmetrized form (eigenvalues of -L).  Throws ConvergenceError
/// if fewer than k pairs converge.
SpectrumResult lowest_eigenpairs(const AssembledOperator& op, int k);

/// E1 - E0.  Requires the first two pairs converged.
double spectral_gap(const SpectrumResult& result);

/// Separating point and well bookkeeping for a 1-d double well.
struct WellPartition {
  double barrier_x = 0.0;   // maximum of U between the two minima
  Region well;              // region G on one side of the barrier
  double left_minimum = 0.0;
  double right_minimum = 0.0;
};

/// Builds the partition from the critical points found in `search`;
/// requires exactly three (minimum, maximum, minimum).  The well region is
/// the left side [search.lo, barrier_x].
WellPartition auto_partition(const Potential& p, const Region& search);

/// theta(x) = 1 - 2 * int_{x_l}^{x} e^{beta U} / int_{x_l}^{x_r} e^{beta U}
/// on the grid nodes, with x_l/x_r the two well minima; +1 left of x_l,
/// -1 right of x_r.  Cumulative quadrature runs in log-space.
std::vector<double> theta_profile(const WittenContext& ctx, const Grid& grid,
                                  const WellPartition& partition);

/// Exact-in-the-continuum expression for the splitting,
///   E1 = - psi0(x_b) psi1'(x_b) / int_G psi1 psi0 dx,
/// with psi1' from a 4th-order central stencil at the node nearest the
/// barrier and the denominator by the trapezoid rule over the well region.
/// The sign of psi1 is fixed by positivity on the left well, so the result
/// is invariant under psi1 -> -psi1.
double surface_formula_e1(std::span<const double> psi0, std::span<const double> psi1,
                          const WellPartition& partition, const Grid& grid);

}  // namespace wittengap
