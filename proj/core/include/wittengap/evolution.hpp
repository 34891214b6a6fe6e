#pragma once

// Time integration of the diffusion equation through the conservative
// Fokker-Planck assembly, stabilization diagnostics, and extraction of the
// relaxation rate (an independent measurement of the spectral gap E1).

#include <span>
#include <utility>
#include <vector>

#include "wittengap/assemble.hpp"

namespace wittengap {

struct EvolutionTrace {
  std::vector<double> times;     // ascending sample times
  std::vector<double> mass;      // int f dx per sample
  // || f(t) - f_inf || in L^2(e^{beta U} dx), with U referenced to its
  // minimum (an additive shift of U only rescales this norm)
  std::vector<double> distance;
  std::vector<std::pair<double, std::vector<double>>> snapshots;  // (t, f on grid)
};

/// Stationary limit e^{-beta U(x_i)} * (int f0 dx) / (int e^{-beta U} dx)
/// (discrete trapezoid integrals; the zero function when int f0 = 0).
std::vector<double> gibbs_limit(const WittenContext& ctx, const Grid& grid,
                                std::span<const double> f0);

struct EvolveOptions {
  double dt = 0.0;        // time step > 0
  double horizon = 0.0;   // total integration time >= dt
  int sample_every = 1;   // record the trace every this many steps
  std::vector<double> snapshot_times;
};

/// Crank-Nicolson integration (I - dt/2 L) f_{k+1} = (I + dt/2 L) f_k.
/// The stepper works on the Gibbs-ratio variable r = f e^{beta U} over the
/// dynamically active part of the grid, with the arithmetic carried in
/// extended precision so the discrete mass identity holds to ~1e-12 over
/// 1e5 steps.  Unconditionally stable; no CFL restriction on dt.
EvolutionTrace evolve(const AssembledOperator& fp, std::span<const double> f0,
                      const EvolveOptions& opts);

struct DecayFit {
  double rate = 0.0;          // lambda: least-squares slope of -ln(distance) vs t
  double rms_residual = 0.0;  // fit quality
};

/// Fits the exponential decay rate of the trace distance over a time
/// window.  The rate estimates E1 of the same operator.  Underflowed
/// distances in the window raise NumericError (pick an earlier window).
DecayFit relaxation_rate(const EvolutionTrace& trace, double t_begin, double t_end);

/// Gibbs density restricted to one well and normalized to unit mass.
std::vector<double> gibbs_well_restriction(const WittenContext& ctx, const Grid& grid,
                                           const Region& well);

/// Gibbs density modulated by a Gaussian bump of the given center/width,
/// normalized to unit mass.  Smooth in the ratio variable, so it carries no
/// rough high-frequency transients.
std::vector<double> gibbs_modulated_bump(const WittenContext& ctx, const Grid& grid,
                                         double center, double width);

}  // namespace wittengap
