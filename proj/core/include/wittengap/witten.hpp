#pragma once

// The substitution psi = e^{beta U/2} f maps the diffusion generator to a
// Schroedinger operator H = -Laplace + V with
//     V = -(beta/2) Laplace U + (beta^2/4) |grad U|^2
// and exact zero-energy ground state e^{-beta U/2}.  Units: hbar = 2m = 1.
// H is the 0-form Witten Laplacian d*_t d_t at deformation parameter
// t = beta/2.

#include <span>
#include <vector>

#include "wittengap/grid.hpp"
#include "wittengap/potential.hpp"

namespace wittengap {

struct WittenContext {
  Potential potential;
  double beta = 1.0;  // inverse temperature > 0

  WittenContext(Potential p, double beta_) : potential(std::move(p)), beta(beta_) {
    if (!(beta > 0.0)) throw ConfigError("witten context: beta must be > 0");
  }
};

/// Effective potential along one axis: v(s) = -(beta/2) u''(s) + (beta^2/4) u'(s)^2.
double effective_potential_axis(const WittenContext& ctx, double s);

/// Separable d-dimensional effective potential V(x) = sum_i v(x_i).
double effective_potential(const WittenContext& ctx, std::span<const double> x);
inline double effective_potential(const WittenContext& ctx, double x) {
  return effective_potential_axis(ctx, x);
}

/// Node samples of the normalized analytic ground state
///   psi0(x_i) = e^{-beta U(x_i)/2} / Z^{1/2},
/// unit discrete L2 norm (h^{d/2}-weighted), strictly positive.  Computed in
/// log-space so extreme beta cannot underflow the normalization.
std::vector<double> ground_state(const WittenContext& ctx, const Grid& grid);

/// Sum of squared forward differences of e^{beta U/2} psi, weighted by
/// e^{-beta U} at cell faces:
///   Q(psi) = sum_faces [ e^{+beta dU/4} psi_{i+1} - e^{-beta dU/4} psi_i ]^2 / h^2
/// with dU = U_{i+1} - U_i (per axis in d = 2).  This equals
/// <psi, H psi> for the compatibly assembled H at the matrix level, and is
/// nonnegative by construction.
double quadratic_form_check(const WittenContext& ctx, const Grid& grid,
                            std::span<const double> psi);

}  // namespace wittengap
