#pragma once

// Run configuration: a single JSON file per run describes the potential,
// the temperature(s), the grid, the well partition and the per-command
// parameters.  Scalar flags (beta, threads, output dir) can override the
// file from the command line.

#include <optional>
#include <string>
#include <vector>

#include "wittengap/evolution.hpp"
#include "wittengap/potential.hpp"
#include "wittengap/ratescan.hpp"
#include "wittengap/spectrum.hpp"

namespace wittengap {

struct RunConfig {
  Potential potential = Potential::quadratic(1.0);
  std::vector<double> betas;  // one or more; "beta" and "betas" both accepted
  Grid grid;                  // resolved (auto-sized from the potential if absent)
  bool partition_auto = true;
  std::optional<WellPartition> partition;  // resolved lazily for auto
  int eigenpairs = 4;                      // spectrum: k
  // evolve parameters
  double dt = 0.0;  // 0: derived default 0.01 / E1_arrhenius
  double horizon = 0.0;
  int sample_every = 10;
  std::vector<double> snapshot_times;
  std::string initial_kind = "gibbs_bump";  // gibbs_bump | left_well | right_well | gibbs | csv
  double bump_center = 0.0;
  bool bump_center_set = false;
  double bump_width = 0.2;
  std::string initial_csv;
  // scan
  GridPolicy grid_policy;
  int threads = 1;
  std::string out_dir = "out";
  std::string dump_operator_path;  // optional matrix dump

  double beta() const;  // the single beta (first entry); throws if none

  WellPartition resolved_partition() const;
};

/// Parses the JSON text of a config file.  Violated invariants raise
/// ConfigError with a message naming the offending field.
RunConfig parse_config(const std::string& json_text);

/// Reads a two-column CSV (x, U) for tabulated potentials; '#' comments and
/// a non-numeric header line are skipped.
std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path);

/// JSON echo of the resolved configuration (the run manifest).
std::string manifest_json(const RunConfig& cfg, const std::string& subcommand);

}  // namespace wittengap
