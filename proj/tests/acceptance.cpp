// Acceptance suite: end-to-end checks of the full pipeline at pinned
// tolerances, one criterion per run (--criterion N) or all in sequence.
// Each criterion prints a single PASS/FAIL line with its measured numbers;
// the exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wittengap/evolution.hpp"
#include "wittengap/ratescan.hpp"

using namespace wittengap;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

void check(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.pass = false;
    o.detail << "  [violated] " << what << "\n";
  }
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

WellPartition quartic_partition() {
  return auto_partition(Potential::quartic_double_well(1.0, 1.0), Region{-3.0, 3.0});
}

// ---------------------------------------------------------------------------
// 1. quadratic oscillator: E0 = 0 and gap = 2 beta alpha, d = 1 and d = 2
// ---------------------------------------------------------------------------
Outcome criterion_1() {
  Outcome o;
  for (double alpha : {0.5, 1.0}) {
    for (double beta : {1.0, 2.0}) {
      const auto start = std::chrono::steady_clock::now();
      const WittenContext ctx(Potential::quadratic(alpha), beta);
      const Grid grid = build_grid(-10.0, 10.0, 1599, 1);
      const auto spec = lowest_eigenpairs(assemble_schrodinger(ctx, grid), 2);
      const double gap = spectral_gap(spec);
      const double target = 2.0 * beta * alpha;
      o.detail << "  d=1 alpha=" << alpha << " beta=" << beta << ": E0=" << spec.eigenvalues[0]
               << " gap=" << gap << " (target " << target << ")\n";
      check(o, std::abs(spec.eigenvalues[0]) <= 1e-4, "E0 within 1e-4 of 0");
      check(o, std::abs(gap / target - 1.0) <= 0.005, "gap within 0.5% of 2 beta alpha");
      check(o, elapsed_seconds(start) <= 10.0, "d=1 case within 10 s");
    }
  }
  for (auto [alpha, beta] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    const auto start = std::chrono::steady_clock::now();
    const WittenContext ctx(Potential::quadratic(alpha, 2), beta);
    const Grid grid = build_grid(-10.0, 10.0, 199, 2);
    const auto spec = lowest_eigenpairs(assemble_schrodinger(ctx, grid), 4);
    const double ba = 2.0 * beta * alpha;
    o.detail << "  d=2 alpha=" << alpha << " beta=" << beta << ": {" << spec.eigenvalues[0]
             << ", " << spec.eigenvalues[1] << ", " << spec.eigenvalues[2] << ", "
             << spec.eigenvalues[3] << "} (target {0, " << ba << ", " << ba << ", "
             << 2 * ba << "})\n";
    check(o, std::abs(spec.eigenvalues[0]) <= 0.02 * ba, "d=2 ground level near 0");
    check(o, std::abs(spec.eigenvalues[1] / ba - 1.0) <= 0.02, "d=2 first excited within 2%");
    check(o, std::abs(spec.eigenvalues[2] / ba - 1.0) <= 0.02, "d=2 degenerate copy within 2%");
    check(o, std::abs(spec.eigenvalues[3] / (2 * ba) - 1.0) <= 0.02, "d=2 second level within 2%");
    check(o, elapsed_seconds(start) <= 10.0, "d=2 case within 10 s");
  }
  return o;
}

// ---------------------------------------------------------------------------
// 2. exact annihilation of the sampled Gibbs ground state
// ---------------------------------------------------------------------------
Outcome criterion_2() {
  Outcome o;
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  std::vector<double> residuals;
  for (int n : {399, 799, 1599}) {
    const Grid grid = build_grid(-3.0, 3.0, n, 1);
    const auto psi0 = ground_state(ctx, grid);
    const auto hpsi = apply_operator(assemble_schrodinger(ctx, grid), psi0);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += hpsi[i] * hpsi[i];
      den += psi0[i] * psi0[i];
    }
    residuals.push_back(std::sqrt(num / den));
    o.detail << "  n=" << n << ": ||H psi0||/||psi0|| = " << residuals.back() << "\n";
  }
  check(o, residuals.back() <= 1e-4, "residual at n=1599 within 1e-4");
  // the assembly annihilates the sampled state identically; refinement order
  // only becomes observable if the residual ever rises above rounding noise
  const double floor = 1e-8;
  const bool at_floor =
      std::all_of(residuals.begin(), residuals.end(), [&](double r) { return r <= floor; });
  if (at_floor) {
    o.detail << "  residuals at the rounding floor (< " << floor
             << "); order test satisfied identically\n";
  } else {
    for (std::size_t i = 1; i < residuals.size(); ++i) {
      const double order = std::log2(residuals[i - 1] / residuals[i]);
      o.detail << "  observed order " << order << "\n";
      check(o, order >= 1.9, "refinement order >= 1.9");
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// 3. mass conservation over 1e4 Crank-Nicolson steps
// ---------------------------------------------------------------------------
Outcome criterion_3() {
  Outcome o;
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
  const Grid grid = build_grid(-3.0, 3.0, 1599, 1);
  const AssembledOperator fp = assemble_fokker_planck(ctx, grid);
  const auto f0 = gibbs_modulated_bump(ctx, grid, -1.0, 0.2);
  EvolveOptions opts;
  opts.dt = 0.05;
  opts.horizon = 0.05 * 10000;
  opts.sample_every = 50;
  const auto trace = evolve(fp, f0, opts);
  double drift = 0.0;
  for (double m : trace.mass) drift = std::max(drift, std::abs(m / trace.mass.front() - 1.0));
  o.detail << "  relative mass drift over 1e4 steps: " << drift << "\n";
  check(o, drift <= 1e-10, "mass drift within 1e-10");
  return o;
}

// ---------------------------------------------------------------------------
// 4. stabilization to the Gibbs state and the fitted relaxation rate
// ---------------------------------------------------------------------------
Outcome criterion_4() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
  const Grid grid = build_grid(-3.0, 3.0, 1599, 1);
  const double e1 = spectral_gap(lowest_eigenpairs(assemble_schrodinger(ctx, grid), 2));

  const AssembledOperator fp = assemble_fokker_planck(ctx, grid);
  const auto f0 = gibbs_modulated_bump(ctx, grid, -1.0, 0.2);
  EvolveOptions opts;
  opts.dt = 0.01 / arrhenius_rate(ctx, quartic_partition());
  opts.horizon = 20.0 / e1;
  opts.sample_every = 2;
  const auto trace = evolve(fp, f0, opts);

  // the trace distance is measured against the stationary (Gibbs) limit
  const double final_distance = trace.distance.back();
  const auto fit = relaxation_rate(trace, 5.0 / e1, 15.0 / e1);

  o.detail << "  E1 = " << e1 << ", distance(20/E1) = " << final_distance
           << ", fitted rate = " << fit.rate << " (" << (fit.rate / e1 - 1.0) * 100.0
           << "% off)\n";
  check(o, final_distance <= 1e-6, "weighted-L2 distance <= 1e-6 at t = 20/E1");
  check(o, std::abs(fit.rate / e1 - 1.0) <= 0.05, "fitted rate within 5% of E1");
  check(o, elapsed_seconds(start) <= 60.0, "runtime within 60 s");
  return o;
}

// ---------------------------------------------------------------------------
// 5. Bohr-Sommerfeld: exactly 1/2 at quadratic minima, 0 at the maximum
// ---------------------------------------------------------------------------
Outcome criterion_5() {
  Outcome o;
  for (double beta : {8.0, 16.0, 32.0}) {
    const WittenContext ctx(Potential::quadratic(1.0), beta);
    const double action = bohr_sommerfeld_action(ctx, Region{-2.0, 2.0});
    o.detail << "  quadratic beta=" << beta << ": action = " << action << "\n";
    check(o, std::abs(action - 0.5) <= 0.01 * 0.5, "action within 1% of 1/2");
  }
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const double at_max = bohr_sommerfeld_action(ctx, Region{-0.4, 0.4});
  o.detail << "  quartic maximum window: action = " << at_max << "\n";
  check(o, at_max == 0.0, "action at the quartic maximum is exactly 0");
  return o;
}

// ---------------------------------------------------------------------------
// 6. Arrhenius slope from the numeric gap over beta in {6, 8, 10, 12}
// ---------------------------------------------------------------------------
Outcome criterion_6() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const GridPolicy policy{-3.0, 3.0, 1599, true, 200.0};
  const ScanTable table = beta_scan(Potential::quartic_double_well(1.0, 1.0),
                                    {6.0, 8.0, 10.0, 12.0}, quartic_partition(), policy);
  for (const auto& row : table.rows) {
    o.detail << "  beta=" << row.estimates.beta << ": E1_numeric = " << row.estimates.e1_numeric
             << "\n";
    check(o, row.converged, "row converged");
  }
  const ArrheniusFit fit = arrhenius_fit(table, RateColumn::Numeric);
  o.detail << "  implied deltaU = " << fit.implied_delta_u() << ", r^2 = " << fit.r_squared
           << "\n";
  check(o, std::abs(fit.implied_delta_u() - 1.0) <= 0.05, "implied deltaU = 1 within 5%");
  check(o, fit.r_squared >= 0.999, "r^2 >= 0.999");
  check(o, elapsed_seconds(start) <= 300.0, "runtime within 5 min");
  if (std::abs(fit.implied_delta_u() - 1.0) > 0.05) {
    o.detail << "  note: the numeric gap carries a prefactor ~ beta on top of "
                "e^{-beta deltaU}; over beta in [6, 12] the unweighted log-linear "
                "slope is biased by d(ln beta)/d(beta) ~ 1/9 ~ 0.11, so the 5% "
                "window on the slope alone is out of reach at these temperatures\n";
  }
  return o;
}

// ---------------------------------------------------------------------------
// 7. estimator concordance at beta = 10 on the quartic benchmark
// ---------------------------------------------------------------------------
Outcome criterion_7() {
  Outcome o;
  const double beta = 10.0;
  const double du = 1.0;
  const GridPolicy policy{-3.0, 3.0, 1599, true, 200.0};
  const ScanRow row =
      rate_estimates(Potential::quartic_double_well(1.0, 1.0), beta, quartic_partition(), policy);
  check(o, row.converged, "eigensolve converged");
  const double ln_num = std::log(row.estimates.e1_numeric);
  const double bound = 0.15 * beta * du;
  for (auto [value, name] : {std::pair{row.estimates.e1_wkb, "wkb"},
                             std::pair{row.estimates.e1_arrhenius, "arrhenius"},
                             std::pair{row.estimates.e1_eyring, "eyring"},
                             std::pair{row.estimates.e1_surface, "surface"}}) {
    const double dist = std::abs(std::log(value) - ln_num);
    o.detail << "  |ln E1_" << name << " - ln E1_numeric| = " << dist << " (bound " << bound
             << ")\n";
    check(o, dist <= bound, std::string("log distance of ") + name);
  }
  const double surf_rel = std::abs(row.estimates.e1_surface / row.estimates.e1_numeric - 1.0);
  o.detail << "  surface relative error = " << surf_rel << "\n";
  check(o, surf_rel <= 0.02, "surface formula within 2% relative");
  return o;
}

// ---------------------------------------------------------------------------
// 8. FP/Schroedinger equivalence on both benchmarks
// ---------------------------------------------------------------------------
Outcome criterion_8() {
  Outcome o;
  struct Case {
    Potential potential;
    double beta;
    Grid grid;
    const char* name;
  };
  const Case cases[] = {
      {Potential::quadratic(1.0), 1.0, build_grid(-10.0, 10.0, 1599, 1), "quadratic"},
      {Potential::quartic_double_well(1.0, 1.0), 6.0, build_grid(-3.0, 3.0, 1599, 1),
       "quartic"},
  };
  for (const auto& c : cases) {
    const WittenContext ctx(c.potential, c.beta);
    const auto hs = lowest_eigenpairs(assemble_schrodinger(ctx, c.grid), 2);
    const auto fs = lowest_eigenpairs(assemble_fokker_planck(ctx, c.grid), 2);
    const double scale = std::max(std::abs(hs.eigenvalues[1]), 1e-12);
    const double d0 = std::abs(hs.eigenvalues[0] - fs.eigenvalues[0]) / scale;
    const double d1 = std::abs(hs.eigenvalues[1] - fs.eigenvalues[1]) / scale;
    o.detail << "  " << c.name << ": relative differences " << d0 << ", " << d1 << "\n";
    check(o, d0 <= 1e-6, std::string(c.name) + " E0 agreement within 1e-6");
    check(o, d1 <= 1e-6, std::string(c.name) + " E1 agreement within 1e-6");
  }
  return o;
}

// ---------------------------------------------------------------------------
// 9. property suites: positivity, orthogonality, shift covariance, determinism
// ---------------------------------------------------------------------------
Outcome criterion_9() {
  Outcome o;
  {  // quadratic-form positivity over 1000 random vectors
    const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
    const Grid grid = build_grid(-3.0, 3.0, 199, 1);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    bool nonneg = true;
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> psi(grid.n);
      for (auto& v : psi) v = unit(rng);
      nonneg = nonneg && quadratic_form_check(ctx, grid, psi) >= 0.0;
    }
    o.detail << "  quadratic form nonnegative on 1000 random vectors: " << nonneg << "\n";
    check(o, nonneg, "quadratic-form positivity");
  }
  {  // eigenvector orthogonality
    const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
    const auto spec = lowest_eigenpairs(assemble_schrodinger(ctx, build_grid(-3.0, 3.0, 1599, 1)), 4);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < spec.eigenvectors[a].size(); ++i) {
          dot += spec.eigenvectors[a][i] * spec.eigenvectors[b][i];
        }
        worst = std::max(worst, std::abs(dot));
      }
    }
    o.detail << "  worst pairwise eigenvector dot product: " << worst << "\n";
    check(o, worst <= 1e-8, "orthogonality within 1e-8");
  }
  {  // free-energy shift covariance
    std::vector<double> x(1201), u0(1201), u1(1201);
    for (int i = 0; i < 1201; ++i) {
      x[i] = -3.0 + 6.0 * i / 1200;
      const double t = x[i] * x[i] - 1.0;
      u0[i] = t * t;
      u1[i] = t * t + 1.25;
    }
    auto xc = x;
    const auto base = Potential::tabulated(std::move(x), std::move(u0));
    const auto lifted = Potential::tabulated(std::move(xc), std::move(u1));
    const double f0 = free_energy(base, Region{-2.0, 2.0}, 8.0);
    const double f1 = free_energy(lifted, Region{-2.0, 2.0}, 8.0);
    o.detail << "  shift covariance defect: " << std::abs(f1 - f0 - 1.25) << "\n";
    check(o, std::abs(f1 - f0 - 1.25) <= 1e-12, "shift covariance within 1e-12");
  }
  {  // bitwise-deterministic scan CSV across thread counts
    const auto pot = Potential::quartic_double_well(1.0, 1.0);
    const GridPolicy policy{-3.0, 3.0, 399, false, 200.0};
    const auto part = quartic_partition();
    std::ostringstream a, b;
    write_scan_csv(beta_scan(pot, {5.0, 7.0, 9.0}, part, policy, 1), a);
    write_scan_csv(beta_scan(pot, {5.0, 7.0, 9.0}, part, policy, 3), b);
    o.detail << "  scan CSV bitwise identical across thread counts: " << (a.str() == b.str())
             << "\n";
    check(o, a.str() == b.str(), "deterministic scan CSV");
  }
  return o;
}

const char* kNames[] = {
    "quadratic oscillator spectrum",
    "exact ground-state annihilation",
    "mass conservation",
    "stabilization theorem",
    "Bohr-Sommerfeld one half",
    "Arrhenius slope",
    "estimator concordance",
    "FP/Schroedinger equivalence",
    "property suites",
};

Outcome (*kCriteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8,
                            criterion_9};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 <= argc - 1; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
  }

  int failures = 0;
  for (int c = 1; c <= 9; ++c) {
    if (only != 0 && c != only) continue;
    const Outcome o = kCriteria[c - 1]();
    std::cout << "[criterion " << c << "] " << kNames[c - 1] << ": "
              << (o.pass ? "PASS" : "FAIL") << "\n"
              << o.detail.str();
    if (!o.pass) ++failures;
  }
  return failures;
}
