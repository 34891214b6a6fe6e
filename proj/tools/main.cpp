// Command-line frontend: computes spectral gaps of the Witten-Schroedinger
// operator for a configured potential, compares them with semiclassical and
// transition-state rate estimates, and verifies the gap as the relaxation
// rate of the diffusion.
//
// Subcommands: spectrum | rates | scan | evolve | validate
// Exit codes:  0 ok (validate: all checks pass), 1 validate check failed,
//              2 configuration error, 3 convergence/numerical error,
//              4 I/O error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "wittengap/config.hpp"
#include "wittengap/csv.hpp"
#include "wittengap/evolution.hpp"
#include "wittengap/ratescan.hpp"

namespace fs = std::filesystem;
using namespace wittengap;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  double beta_override = 0.0;
  int threads_override = 0;
};

RunConfig load(const CommonArgs& args, const std::string& subcommand) {
  RunConfig cfg = parse_config(slurp(args.config_path));
  if (args.beta_override > 0.0) cfg.betas = {args.beta_override};
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.threads_override > 0) cfg.threads = args.threads_override;
  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / "manifest.json", manifest_json(cfg, subcommand) + "\n");
  return cfg;
}

std::vector<double> node_coordinates(const Grid& grid) {
  std::vector<double> x(grid.n);
  for (int i = 0; i < grid.n; ++i) x[i] = grid.node(i);
  return x;
}

int cmd_spectrum(const CommonArgs& args) {
  RunConfig cfg = load(args, "spectrum");
  const WittenContext ctx(cfg.potential, cfg.beta());
  const AssembledOperator op = assemble_schrodinger(ctx, cfg.grid);
  if (cfg.eigenpairs > op.grid.total_nodes()) {
    throw ConfigError("spectrum: k exceeds the matrix size");
  }
  if (!cfg.dump_operator_path.empty()) {
    std::ofstream dump(cfg.dump_operator_path);
    dump_triplets(op, dump);
    if (!dump) throw std::ios_base::failure("cannot write " + cfg.dump_operator_path);
  }
  const SpectrumResult spec = lowest_eigenpairs(op, cfg.eigenpairs);

  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    std::cout << "E" << i << " = " << format_full(spec.eigenvalues[i])
              << (spec.converged[i] ? "" : "  (unconverged)") << "\n";
  }
  std::cout << "gap = " << format_full(spectral_gap(spec)) << "\n";

  if (cfg.grid.dim == 1) {
    std::ofstream csv(fs::path(cfg.out_dir) / "eigenvectors.csv");
    write_eigenvector_csv(csv, node_coordinates(cfg.grid), spec.eigenvectors);
    if (!csv) throw std::ios_base::failure("cannot write eigenvectors.csv");
  } else {
    std::ofstream csv(fs::path(cfg.out_dir) / "eigenvalues.csv");
    csv << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
      csv << i << "," << format_full(spec.eigenvalues[i]) << "\n";
    }
    if (!csv) throw std::ios_base::failure("cannot write eigenvalues.csv");
  }
  return 0;
}

int cmd_rates(const CommonArgs& args) {
  RunConfig cfg = load(args, "rates");
  const WellPartition part = cfg.resolved_partition();
  ScanTable table;
  table.rows.push_back(rate_estimates(cfg.potential, cfg.beta(), part, cfg.grid_policy));
  const auto& e = table.rows[0].estimates;
  std::cout << "beta        = " << format_full(e.beta) << "\n"
            << "E1_numeric  = " << format_full(e.e1_numeric) << "\n"
            << "E1_wkb      = " << format_full(e.e1_wkb) << "\n"
            << "E1_arrhenius= " << format_full(e.e1_arrhenius) << "\n"
            << "E1_eyring   = " << format_full(e.e1_eyring) << "\n"
            << "E1_surface  = " << format_full(e.e1_surface) << "\n"
            << "deltaU      = " << format_full(e.delta_u) << "\n"
            << "F0          = " << format_full(e.f0) << "\n"
            << "F1          = " << format_full(e.f1) << "\n";
  if (!table.rows[0].warning.empty()) std::cout << "warning: " << table.rows[0].warning << "\n";
  std::ofstream csv(fs::path(cfg.out_dir) / "rates.csv");
  write_scan_csv(table, csv);
  if (!csv) throw std::ios_base::failure("cannot write rates.csv");
  return 0;
}

int cmd_scan(const CommonArgs& args) {
  RunConfig cfg = load(args, "scan");
  if (cfg.betas.size() < 2) throw ConfigError("scan: need at least two betas");
  const WellPartition part = cfg.resolved_partition();
  const ScanTable table = beta_scan(cfg.potential, cfg.betas, part, cfg.grid_policy, cfg.threads);

  std::ofstream csv(fs::path(cfg.out_dir) / "scan.csv");
  write_scan_csv(table, csv);
  if (!csv) throw std::ios_base::failure("cannot write scan.csv");

  for (const auto& row : table.rows) {
    if (!row.warning.empty()) {
      std::cout << "warning (beta = " << row.estimates.beta << "): " << row.warning << "\n";
    }
  }
  const bool single_well = table.rows[0].estimates.delta_u <= 0.0;
  for (auto [col, name] : {std::pair{RateColumn::Numeric, "E1_numeric"},
                           std::pair{RateColumn::Wkb, "E1_wkb"},
                           std::pair{RateColumn::Arrhenius, "E1_arrhenius"},
                           std::pair{RateColumn::Eyring, "E1_eyring"}}) {
    try {
      const ArrheniusFit fit = arrhenius_fit(table, col);
      std::cout << name << ": slope = " << format_full(fit.slope)
                << ", implied deltaU = " << format_full(fit.implied_delta_u())
                << ", r^2 = " << format_full(fit.r_squared);
      if (fit.slope >= 0.0 || single_well) {
        std::cout << "  [warning: positive slope or no barrier; the Arrhenius "
                     "formula is not applicable]";
      }
      std::cout << "\n";
    } catch (const ConfigError& e) {
      std::cout << name << ": fit skipped (" << e.what() << ")\n";
    }
  }
  return 0;
}

int cmd_evolve(const CommonArgs& args) {
  RunConfig cfg = load(args, "evolve");
  const double beta = cfg.beta();
  const WittenContext ctx(cfg.potential, beta);
  if (cfg.grid.dim != 1) throw ConfigError("evolve: d = 1 only");

  // defaults that resolve the slow mode: dt = 0.01/E1_est, horizon = 20/E1_est
  double e1_est = 0.0;
  WellPartition part;
  bool have_partition = false;
  try {
    part = cfg.resolved_partition();
    have_partition = true;
    e1_est = arrhenius_rate(ctx, part);
  } catch (const std::exception&) {
    // single-well or unresolvable partition: harmonic estimate at the minimum
    const auto cps = critical_points(cfg.potential, Region{cfg.grid.lo, cfg.grid.hi});
    for (const auto& cp : cps) {
      if (cp.kind == CriticalKind::Minimum) e1_est = beta * cp.hessian_eigs[0];
    }
  }
  double dt = cfg.dt;
  if (!(dt > 0.0)) {
    if (!(e1_est > 0.0)) throw ConfigError("evolve: set evolve.dt (no rate estimate available)");
    dt = 0.01 / e1_est;
  }
  double horizon = cfg.horizon;
  if (!(horizon > 0.0)) {
    if (!(e1_est > 0.0)) throw ConfigError("evolve: set evolve.horizon");
    horizon = 20.0 / e1_est;
  }

  std::vector<double> f0;
  if (cfg.initial_kind == "gibbs") {
    f0 = gibbs_well_restriction(ctx, cfg.grid, Region{cfg.grid.lo, cfg.grid.hi});
  } else if (cfg.initial_kind == "left_well" || cfg.initial_kind == "right_well") {
    if (!have_partition) throw ConfigError("evolve: well initial condition needs a partition");
    const Region well = cfg.initial_kind == "left_well"
                            ? Region{cfg.grid.lo, part.barrier_x}
                            : Region{part.barrier_x, cfg.grid.hi};
    f0 = gibbs_well_restriction(ctx, cfg.grid, well);
  } else if (cfg.initial_kind == "gibbs_bump") {
    double center = cfg.bump_center;
    if (!cfg.bump_center_set && have_partition) center = part.left_minimum;
    f0 = gibbs_modulated_bump(ctx, cfg.grid, center, cfg.bump_width);
  } else if (cfg.initial_kind == "csv") {
    auto [x, f] = read_xy_csv(cfg.initial_csv);
    if (static_cast<int>(f.size()) != cfg.grid.n) {
      throw ConfigError("evolve: initial CSV must have one row per grid node");
    }
    f0 = std::move(f);
  } else {
    throw ConfigError("evolve: unknown initial condition \"" + cfg.initial_kind + "\"");
  }

  const AssembledOperator fp = assemble_fokker_planck(ctx, cfg.grid);
  EvolveOptions opts;
  opts.dt = dt;
  opts.horizon = horizon;
  opts.sample_every = cfg.sample_every;
  opts.snapshot_times = cfg.snapshot_times;
  const EvolutionTrace trace = evolve(fp, f0, opts);

  std::ofstream csv(fs::path(cfg.out_dir) / "trace.csv");
  write_trace_csv(csv, trace.times, trace.mass, trace.distance);
  if (!csv) throw std::ios_base::failure("cannot write trace.csv");
  for (const auto& [t, f] : trace.snapshots) {
    std::ofstream snap(fs::path(cfg.out_dir) / ("snapshot_t" + format_full(t) + ".csv"));
    write_profile_csv(snap, node_coordinates(cfg.grid), f);
    if (!snap) throw std::ios_base::failure("cannot write snapshot CSV");
  }

  std::cout << "steps = " << static_cast<long>(std::ceil(horizon / dt - 1e-12))
            << ", samples = " << trace.times.size() << ", dt = " << format_full(dt) << "\n"
            << "mass(0) = " << format_full(trace.mass.front())
            << ", mass(T) = " << format_full(trace.mass.back()) << "\n"
            << "distance(0) = " << format_full(trace.distance.front())
            << ", distance(T) = " << format_full(trace.distance.back()) << "\n";
  return 0;
}

int cmd_validate(const CommonArgs& args) {
  RunConfig cfg = load(args, "validate");
  const double beta = cfg.beta();
  const WittenContext ctx(cfg.potential, beta);
  const Grid& grid = cfg.grid;
  if (grid.dim != 1) throw ConfigError("validate: d = 1 only");

  bool all_pass = true;
  auto report = [&all_pass](const std::string& name, bool pass, const std::string& detail) {
    all_pass = all_pass && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "  (" << detail << ")\n";
  };

  const AssembledOperator hop = assemble_schrodinger(ctx, grid);
  const AssembledOperator fp = assemble_fokker_planck(ctx, grid);

  {  // exact annihilation of the sampled ground state
    const auto psi0 = ground_state(ctx, grid);
    const auto hpsi = apply_operator(hop, psi0);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      num += hpsi[i] * hpsi[i];
      den += psi0[i] * psi0[i];
    }
    const double res = std::sqrt(num / den);
    report("ground-state residual", res <= 1e-8, "||H psi0||/||psi0|| = " + format_full(res));
  }
  {  // Gibbs density in the kernel of L
    std::vector<double> gibbs(grid.n);
    for (int i = 0; i < grid.n; ++i) gibbs[i] = std::exp(2.0 * fp.log_weight[i + 1]);
    const auto lg = apply_operator(fp, gibbs);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      num = std::max(num, std::abs(lg[i]));
      den = std::max(den, std::abs(fp.diag[i]) * gibbs[i]);
    }
    const double rel = num / den;
    report("Fokker-Planck Gibbs kernel", rel <= 1e-12, "max |L g| rel = " + format_full(rel));
  }
  {  // mass conservation over 2000 steps
    const WellPartition* part = nullptr;
    WellPartition p;
    try {
      p = cfg.resolved_partition();
      part = &p;
    } catch (const std::exception&) {
    }
    const double center = part ? part->left_minimum : 0.5 * (grid.lo + grid.hi);
    const auto f0 = gibbs_modulated_bump(ctx, grid, center, 0.2);
    EvolveOptions opts;
    opts.dt = 0.05;
    opts.horizon = 100.0;
    opts.sample_every = 10;
    const EvolutionTrace tr = evolve(fp, f0, opts);
    double drift = 0.0;
    for (double m : tr.mass) drift = std::max(drift, std::abs(m / tr.mass.front() - 1.0));
    report("mass conservation (2000 steps)", drift <= 1e-10,
           "max relative drift = " + format_full(drift));
  }
  {  // FP/Schroedinger spectral agreement
    const SpectrumResult a = lowest_eigenpairs(hop, 2);
    const SpectrumResult b = lowest_eigenpairs(fp, 2);
    const double scale = std::max(std::abs(a.eigenvalues[1]), 1e-12);
    const double d0 = std::abs(a.eigenvalues[0] - b.eigenvalues[0]) / scale;
    const double d1 = std::abs(a.eigenvalues[1] - b.eigenvalues[1]) / scale;
    report("FP/Schroedinger spectral agreement", d0 <= 1e-6 && d1 <= 1e-6,
           "relative differences " + format_full(d0) + ", " + format_full(d1));
  }
  {  // Bohr-Sommerfeld at the minima, with the O(1/beta) finite-temperature allowance
    const auto cps = critical_points(cfg.potential, Region{grid.lo, grid.hi});
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (cps[i].kind != CriticalKind::Minimum) continue;
      const double lo = (i == 0) ? grid.lo : 0.5 * (cps[i - 1].location + cps[i].location);
      const double hi =
          (i + 1 == cps.size()) ? grid.hi : 0.5 * (cps[i].location + cps[i + 1].location);
      const double action = bohr_sommerfeld_action(ctx, Region{lo, hi});
      ok = ok && action >= 0.5 - 0.5 / beta;
      if (!detail.empty()) detail += ", ";
      detail += format_full(action);
    }
    report("Bohr-Sommerfeld action at minima >= 1/2 - 1/(2 beta)", ok, detail);
  }
  {  // positivity of the quadratic form
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      std::vector<double> psi(grid.n);
      for (auto& v : psi) v = unit(rng);
      const double q = quadratic_form_check(ctx, grid, psi);
      worst = std::min(worst, q);
      ok = ok && q >= 0.0;
    }
    report("quadratic form positivity (200 random vectors)", ok,
           "min Q = " + format_full(worst));
  }

  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gaps and relaxation rates of diffusion in a confining potential"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&args](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: config or ./out)");
    cmd->add_option("--beta", args.beta_override, "override beta");
    cmd->add_option("--threads", args.threads_override, "worker threads for scans");
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "lowest eigenpairs of the operator");
  auto* rates_cmd = app.add_subcommand("rates", "all rate estimates at one beta");
  auto* scan_cmd = app.add_subcommand("scan", "beta sweep with Arrhenius fits");
  auto* evolve_cmd = app.add_subcommand("evolve", "time-integrate the diffusion");
  auto* validate_cmd = app.add_subcommand("validate", "run the invariant checks");
  for (auto* cmd : {spectrum_cmd, rates_cmd, scan_cmd, evolve_cmd, validate_cmd}) {
    add_common(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum_cmd->parsed()) return cmd_spectrum(args);
    if (rates_cmd->parsed()) return cmd_rates(args);
    if (scan_cmd->parsed()) return cmd_scan(args);
    if (evolve_cmd->parsed()) return cmd_evolve(args);
    if (validate_cmd->parsed()) return cmd_validate(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what()
              << " (best residual " << e.best_residual << ")\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
