#pragma once

// Beta sweeps: per-temperature assembly + eigensolve + every rate
// estimator, collected into a table, plus the Arrhenius-law fit that
// recovers the barrier height from the slope of ln(rate) vs beta.

#include <iosfwd>
#include <vector>

#include "wittengap/semiclassics.hpp"

namespace wittengap {

struct GridPolicy {
  double lo = 0.0;
  double hi = 0.0;
  int base_n = 1599;
  // node count grows as max(base_n, ceil(nodes_per_beta * beta * dU)) to
  // resolve the sharpening e^{-beta U/2} boundary layers
  bool scale_with_beta = true;
  double nodes_per_beta = 200.0;

  int nodes_for(double beta, double delta_u_estimate) const;
};

struct ScanRow {
  RateEstimates estimates;
  bool converged = false;
  std::string warning;  // set when the gap nears the discretization floor
};

struct ScanTable {
  std::vector<ScanRow> rows;  // ordered by beta, strictly increasing
};

/// Assembles, eigensolves and evaluates every estimator at one beta.
ScanRow rate_estimates(const Potential& potential, double beta,
                       const WellPartition& partition, const GridPolicy& policy);

/// Runs the full estimator set for every beta.  Unconverged eigensolves
/// flag the row and the scan continues.  Rows are computed independently
/// (optionally on `threads` workers) and merged in beta order, so the
/// result is identical for any thread count.
ScanTable beta_scan(const Potential& potential, const std::vector<double>& betas,
                    const WellPartition& partition, const GridPolicy& policy,
                    int threads = 1);

enum class RateColumn { Numeric, Wkb, Arrhenius, Eyring, Surface };

struct ArrheniusFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double implied_delta_u() const { return -slope; }
};

/// Ordinary least squares of ln(rate) on beta over the converged rows with
/// a positive rate in the selected column.  Needs at least two usable rows.
ArrheniusFit arrhenius_fit(const ScanTable& table, RateColumn column);

double rate_column(const RateEstimates& row, RateColumn column);

/// Exact column order:
/// beta,E1_numeric,E1_wkb,E1_arrhenius,E1_eyring,E1_surface,deltaU,F0,F1,p0,vol
void write_scan_csv(const ScanTable& table, std::ostream& os);

}  // namespace wittengap
