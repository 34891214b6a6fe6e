#pragma once

// Explicitly restarted Lanczos with full reorthogonalization for the
// lowest eigenpairs of a large sparse symmetric operator.  Converged Ritz
// vectors are locked and deflated, so degenerate eigenvalues are found one
// copy per restart cycle.

#include <functional>
#include <vector>

#include "wittengap/tridiag_eigen.hpp"

namespace wittengap {

struct LanczosOptions {
  int max_basis = 400;        // Krylov basis size per cycle
  long iteration_cap = 0;     // 0: use 10 * k * sqrt(N)
  double tol = 1e-10;         // residual tolerance relative to operator scale
  unsigned long seed = 0x2545F4914F6CDD1DULL;
};

/// apply(v, out): out = A v for the symmetric operator A of dimension n.
TridiagEigenResult lanczos_lowest(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
    long n, int k, const LanczosOptions& opts = {});

}  // namespace wittengap
