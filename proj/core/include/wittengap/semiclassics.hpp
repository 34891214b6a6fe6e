#pragma once

// Semiclassical machinery for the low-temperature regime: the
// Bohr-Sommerfeld bound-state criterion, the ground-state tunneling
// splitting, and the Arrhenius / Eyring transition-rate estimates.

#include "wittengap/potential.hpp"
#include "wittengap/spectrum.hpp"
#include "wittengap/witten.hpp"

namespace wittengap {

/// Per-beta record of every rate estimate and its ingredients.
struct RateEstimates {
  double beta = 0.0;
  double e1_numeric = 0.0;    // eigensolver gap
  double e1_wkb = 0.0;        // tunneling splitting
  double e1_arrhenius = 0.0;  // prefactor * e^{-beta dU}
  double e1_eyring = 0.0;     // e^{-beta (F1 - F0)}
  double e1_surface = 0.0;    // separating-point formula
  double delta_u = 0.0;       // U(barrier) - U(minimum)
  double f0 = 0.0;            // well free energy
  double f1 = 0.0;            // transition-state free energy
  double p0 = 0.0;            // momentum sqrt(V) at the barrier
  double vol = 0.0;           // classically allowed length of one well
};

/// (1/pi) int_{V <= 0, x in well} sqrt(-V) dx.  A bound state is predicted
/// when the value reaches 1/2; quadratic minima give exactly 1/2, while
/// generic wells approach it from below with an O(1/beta) deficit.
/// Returns 0 when V > 0 throughout the well.
double bohr_sommerfeld_action(const WittenContext& ctx, const Region& well);

/// True when the action reaches the bound-state threshold 1/2.  Quadratic
/// minima sit exactly at the threshold, so the comparison carries the
/// quadrature tolerance.
inline bool bound_state_predicted(double action) { return action >= 0.5 * (1.0 - 1e-8); }

/// Geometric barrier height U(barrier) - U(left minimum).
double barrier_height(const WittenContext& ctx, const WellPartition& partition);

/// Semiclassical geometry at inverse temperature beta: the barrier momentum
/// p0 = sqrt(V(x_b)), the classically allowed length of one well (the
/// V <= 0 component beside the barrier), and the barrier action
/// int_{V > 0} sqrt(V) over the connected component containing x_b.
struct WkbGeometry {
  double p0 = 0.0;
  double vol = 0.0;
  double action = 0.0;
};
WkbGeometry wkb_geometry(const WittenContext& ctx, const WellPartition& partition);

/// Ground-state splitting (|p(0)|/Vol) exp(-int_{V>0} sqrt(V) dx) for a
/// symmetric double well.  Throws when the wells are asymmetric or when
/// V(x_b) <= 0 (barrier not semiclassically resolved; increase beta).
double wkb_splitting(const WittenContext& ctx, const WellPartition& partition);

/// Low-temperature reduction (|p(0)|/Vol) exp(-beta dU).
double arrhenius_rate(const WittenContext& ctx, const WellPartition& partition);

/// Thermal window around the barrier top: { x : U(x) >= U(x_b) - 1/beta }.
Region thermal_barrier_window(const WittenContext& ctx, const WellPartition& partition);

/// Transition-state free energy from the reciprocal barrier weight,
///   e^{-beta F1} = [ int_barrier e^{+beta U} dx ]^{-1},
/// evaluated in log-space.  The e^{+beta U} integrand concentrates at the
/// barrier top, which makes F1 insensitive to the window choice; the
/// window-averaged e^{-beta U} form is off by prefactor powers of
/// (beta dU) at accessible temperatures.
double transition_state_free_energy(const WittenContext& ctx, const Region& barrier);

/// e^{-beta (F1 - F0)} with F0 = free_energy(well) and F1 as above.
/// Rejects overlapping well/barrier regions.
double eyring_rate(const WittenContext& ctx, const Region& well_region,
                   const Region& barrier_region);

}  // namespace wittengap
