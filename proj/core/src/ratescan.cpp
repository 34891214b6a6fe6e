#include "wittengap/ratescan.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <string>

#include "wittengap/csv.hpp"
#include "wittengap/numerics.hpp"

namespace wittengap {

int GridPolicy::nodes_for(double beta, double delta_u_estimate) const {
  if (!scale_with_beta) return base_n;
  const double scaled = nodes_per_beta * beta * std::max(delta_u_estimate, 1e-3);
  return std::max(base_n, static_cast<int>(std::ceil(scaled)));
}

ScanRow rate_estimates(const Potential& potential, double beta,
                       const WellPartition& partition, const GridPolicy& policy) {
  ScanRow row;
  row.estimates.beta = beta;
  const WittenContext ctx(potential, beta);

  const double du = barrier_height(ctx, partition);
  row.estimates.delta_u = du;

  const Grid grid = build_grid(policy.lo, policy.hi, policy.nodes_for(beta, du), 1);
  const AssembledOperator op = assemble_schrodinger(ctx, grid);

  try {
    const SpectrumResult spec = lowest_eigenpairs(op, 2);
    row.estimates.e1_numeric = spectral_gap(spec);
    row.estimates.e1_surface =
        surface_formula_e1(spec.eigenvectors[0], spec.eigenvectors[1], partition, grid);
    row.converged = true;
  } catch (const ConvergenceError&) {
    row.converged = false;
  }

  // semiclassical estimators are left at 0 when inapplicable (no barrier,
  // unresolved barrier, asymmetric wells); the log fits skip such entries
  try {
    const WkbGeometry geom = wkb_geometry(ctx, partition);
    row.estimates.p0 = geom.p0;
    row.estimates.vol = geom.vol;
    row.estimates.e1_wkb = wkb_splitting(ctx, partition);
    row.estimates.e1_arrhenius = arrhenius_rate(ctx, partition);
  } catch (const std::exception&) {
  }
  try {
    const Region window = thermal_barrier_window(ctx, partition);
    const Region well{grid.lo, window.lo};
    row.estimates.f0 = free_energy(potential, well, beta);
    row.estimates.f1 = transition_state_free_energy(ctx, window);
    row.estimates.e1_eyring = std::exp(-beta * (row.estimates.f1 - row.estimates.f0));
  } catch (const std::exception&) {
  }

  if (row.converged) {
    // discretization floor from the eigensolver's resolution limit: flag
    // gaps within 1e3 of eps * ||H||
    double norm_t = 0.0;
    for (std::size_t i = 0; i < op.diag.size(); ++i) {
      const double r = (i > 0 ? std::abs(op.sub[i - 1]) : 0.0) +
                       (i + 1 < op.diag.size() ? std::abs(op.sub[i]) : 0.0);
      norm_t = std::max(norm_t, std::abs(op.diag[i]) + r);
    }
    const double floor = std::numeric_limits<double>::epsilon() * norm_t;
    if (row.estimates.e1_numeric < 1e3 * floor) {
      row.warning = "gap within 1e3 of the discretization floor (" + format_full(floor) +
                    "); increase the grid resolution or lower beta";
    }
  }
  return row;
}

ScanTable beta_scan(const Potential& potential, const std::vector<double>& betas,
                    const WellPartition& partition, const GridPolicy& policy, int threads) {
  if (betas.size() < 2) throw ConfigError("beta_scan: need at least two beta values");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0)) throw ConfigError("beta_scan: beta values must be > 0");
    if (i > 0 && !(betas[i] > betas[i - 1])) {
      throw ConfigError("beta_scan: beta values must be strictly increasing");
    }
  }

  ScanTable table;
  table.rows.resize(betas.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
      table.rows[i] = rate_estimates(potential, betas[i], partition, policy);
    }
    return table;
  }

  // rows are independent; fan out and merge in beta order
  std::vector<std::future<ScanRow>> futures(betas.size());
  std::size_t next = 0;
  while (next < betas.size()) {
    const std::size_t batch = std::min<std::size_t>(threads, betas.size() - next);
    for (std::size_t j = 0; j < batch; ++j) {
      const double beta = betas[next + j];
      futures[next + j] = std::async(std::launch::async, [&, beta] {
        return rate_estimates(potential, beta, partition, policy);
      });
    }
    for (std::size_t j = 0; j < batch; ++j) {
      table.rows[next + j] = futures[next + j].get();
    }
    next += batch;
  }
  return table;
}

double rate_column(const RateEstimates& row, RateColumn column) {
  switch (column) {
    case RateColumn::Numeric: return row.e1_numeric;
    case RateColumn::Wkb: return row.e1_wkb;
    case RateColumn::Arrhenius: return row.e1_arrhenius;
    case RateColumn::Eyring: return row.e1_eyring;
    case RateColumn::Surface: return row.e1_surface;
  }
  return 0.0;
}

ArrheniusFit arrhenius_fit(const ScanTable& table, RateColumn column) {
  std::vector<double> xs, ys;
  for (const auto& row : table.rows) {
    if (!row.converged && (column == RateColumn::Numeric || column == RateColumn::Surface)) {
      continue;
    }
    const double rate = rate_column(row.estimates, column);
    if (!(rate > 0.0)) continue;  // nonpositive rates are excluded from the log fit
    xs.push_back(row.estimates.beta);
    ys.push_back(std::log(rate));
  }
  if (xs.size() < 2) {
    throw ConfigError("arrhenius_fit: fewer than two usable rows in the selected column");
  }
  const LinearFit f = linear_fit(xs, ys);
  return ArrheniusFit{f.slope, f.intercept, f.r_squared};
}

void write_scan_csv(const ScanTable& table, std::ostream& os) {
  os << "beta,E1_numeric,E1_wkb,E1_arrhenius,E1_eyring,E1_surface,deltaU,F0,F1,p0,vol\n";
  for (const auto& row : table.rows) {
    const auto& e = row.estimates;
    os << format_full(e.beta) << "," << format_full(e.e1_numeric) << ","
       << format_full(e.e1_wkb) << "," << format_full(e.e1_arrhenius) << ","
       << format_full(e.e1_eyring) << "," << format_full(e.e1_surface) << ","
       << format_full(e.delta_u) << "," << format_full(e.f0) << "," << format_full(e.f1)
       << "," << format_full(e.p0) << "," << format_full(e.vol) << "\n";
  }
}

}  // namespace wittengap
