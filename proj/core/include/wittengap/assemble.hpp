#pragma once

// Symmetric discretizations of the Schroedinger operator H = -Laplace + V
// and the Fokker-Planck operator L = div(e^{-beta U} grad(e^{beta U} .)).
//
// Both assemblies share the cell-face weights
//     c_{i+1/2} = e^{-beta (U_i + U_{i+1}) / 2},
// which makes the three defining identities hold at the matrix level:
//   * H annihilates the sampled Gibbs ground state e^{-beta U/2} exactly
//     (interior rows), and equals the factorized form A*A, hence is PSD;
//   * L annihilates the sampled Gibbs density e^{-beta U} exactly and its
//     interior column sums vanish (discrete mass conservation);
//   * the similarity f = e^{-beta U/2} psi conjugates L into -H exactly.
// The Schroedinger off-diagonals are the standard central-difference
// -1/h^2; the diagonal carries 2/h^2 plus the effective potential in its
// Gibbs-consistent discrete form (w_{i-1} + w_{i+1} - 2 w_i)/(h^2 w_i),
// which agrees with the analytic V to O(h^2).

#include <iosfwd>
#include <span>
#include <vector>

#include "wittengap/grid.hpp"
#include "wittengap/witten.hpp"

namespace wittengap {

enum class OperatorKind { Schrodinger, FokkerPlanck };

struct AssembledOperator {
  OperatorKind kind = OperatorKind::Schrodinger;
  Grid grid;
  double beta = 1.0;

  // d = 1: tridiagonal entries on the n interior nodes.  Schrodinger
  // matrices are symmetric (sub == sup); Fokker-Planck ones are not.
  // d = 2 (Schrodinger only): diag/sub hold the shared 1-d axis operator
  // and the full matrix is  A (x) I + I (x) A  on the tensor grid.
  std::vector<double> diag;
  std::vector<double> sub;
  std::vector<double> sup;

  // similarity weights, stored in log form to stay representable:
  // log_weight[i] = -beta U(x_i)/2 on nodes 0..n+1 (boundaries included),
  // log_face[i]   = -beta (U_i + U_{i+1})/2 on the n+1 cell faces.
  std::vector<double> log_weight;
  std::vector<double> log_face;

  bool symmetric() const { return kind == OperatorKind::Schrodinger; }
};

/// H = -Laplace_h + diag(V) with the Gibbs-consistent discrete V (see top).
/// d = 1 or d = 2 (separable analytic families).
AssembledOperator assemble_schrodinger(const WittenContext& ctx, const Grid& grid);

/// Conservative finite-volume Fokker-Planck generator (d = 1):
///   (L f)_i = [ c_{i+1/2} (r_{i+1} - r_i) - c_{i-1/2} (r_i - r_{i-1}) ] / h^2,
/// r = f e^{beta U}.  Entries are formed from face/node weight ratios, so
/// tails overflow only when beta h |U'| exceeds ~1400.
AssembledOperator assemble_fokker_planck(const WittenContext& ctx, const Grid& grid);

/// Similarity-symmetrized form of a Fokker-Planck operator: the matrix
/// -W^{-1} L W with W = diag(e^{-beta U/2}), assembled independently from
/// the stored weights.  Agrees with assemble_schrodinger to rounding.
AssembledOperator similarity_symmetrized(const AssembledOperator& fp);

/// Matrix-vector product (d = 1 tridiagonal or d = 2 tensor form).
std::vector<double> apply_operator(const AssembledOperator& op, std::span<const double> v);

/// Plain-text dump: one "row col value" triplet per line (0-based indices),
/// preceded by a "# n nnz" header.  d = 1 only.
void dump_triplets(const AssembledOperator& op, std::ostream& os);

}  // namespace wittengap
