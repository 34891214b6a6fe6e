#pragma once

// Direct eigensolver for symmetric tridiagonal matrices: Sturm-sequence
// bisection isolates the lowest k eigenvalues, inverse iteration with a
// partially pivoted tridiagonal LU recovers the eigenvectors, and close
// eigenvalues are handled as clusters with in-cluster reorthogonalization.

#include <span>
#include <vector>

namespace wittengap {

struct TridiagEigenResult {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // unit 2-norm
  std::vector<double> residuals;              // ||T v - lambda v||
  std::vector<bool> converged;
};

/// Lowest k eigenpairs of the symmetric tridiagonal matrix (diag, off).
TridiagEigenResult lowest_eigenpairs_tridiagonal(std::span<const double> diag,
                                                 std::span<const double> off, int k);

/// Number of eigenvalues strictly below x (Sturm count via LDL^T signs).
int sturm_count(std::span<const double> diag, std::span<const double> off, double x);

}  // namespace wittengap
