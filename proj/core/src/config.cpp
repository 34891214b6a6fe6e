#include "wittengap/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wittengap {

using nlohmann::json;

namespace {

Potential parse_potential(const json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ConfigError("config: potential block needs a \"family\" field");
  }
  const std::string family = j.at("family").get<std::string>();
  const int dim = j.value("dimension", 1);
  if (family == "quadratic") {
    return Potential::quadratic(j.value("alpha", 1.0), dim);
  }
  if (family == "quartic_double_well") {
    return Potential::quartic_double_well(j.value("h", 1.0), j.value("a", 1.0), dim);
  }
  if (family == "gaussian_barrier_well") {
    return Potential::gaussian_barrier_well(j.value("delta_u", 1.0), j.value("a", 1.0),
                                            j.value("confinement", 0.0));
  }
  if (family == "tabulated") {
    if (!j.contains("csv")) throw ConfigError("config: tabulated potential needs a \"csv\" path");
    auto [x, u] = read_xy_csv(j.at("csv").get<std::string>());
    return Potential::tabulated(std::move(x), std::move(u));
  }
  throw ConfigError("config: unknown potential family \"" + family + "\"");
}

Grid default_grid(const Potential& p) {
  // [-8a, 8a] on the well scale a, clipped to the evaluable range
  const double a = p.well_scale();
  const Region r = p.evaluable_range();
  const double lo = std::max(-8.0 * a, r.lo);
  const double hi = std::min(8.0 * a, r.hi);
  return build_grid(lo, hi, 1599, p.dimension());
}

}  // namespace

double RunConfig::beta() const {
  if (betas.empty()) throw ConfigError("config: no beta given");
  return betas.front();
}

WellPartition RunConfig::resolved_partition() const {
  if (partition.has_value()) return *partition;
  return auto_partition(potential, Region{grid.lo, grid.hi});
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  RunConfig cfg;
  if (!j.contains("potential")) throw ConfigError("config: missing \"potential\" block");
  cfg.potential = parse_potential(j.at("potential"));

  if (j.contains("beta")) cfg.betas = {j.at("beta").get<double>()};
  if (j.contains("betas")) {
    cfg.betas = j.at("betas").get<std::vector<double>>();
    if (!std::is_sorted(cfg.betas.begin(), cfg.betas.end())) {
      throw ConfigError("config: betas must be increasing");
    }
  }
  for (double b : cfg.betas) {
    if (!(b > 0.0)) throw ConfigError("config: beta must be > 0");
  }

  if (j.contains("grid") && !j.at("grid").is_string()) {
    const auto& g = j.at("grid");
    cfg.grid = build_grid(g.at("lo").get<double>(), g.at("hi").get<double>(),
                          g.value("n", 1599), g.value("dimension", cfg.potential.dimension()));
  } else {
    cfg.grid = default_grid(cfg.potential);
  }
  if (cfg.grid.dim != cfg.potential.dimension()) {
    throw ConfigError("config: grid and potential dimensions disagree");
  }

  if (j.contains("partition") && !(j.at("partition").is_string())) {
    const auto& p = j.at("partition");
    WellPartition part;
    part.barrier_x = p.at("barrier_x").get<double>();
    part.left_minimum = p.at("left_minimum").get<double>();
    part.right_minimum = p.at("right_minimum").get<double>();
    if (p.contains("well")) {
      part.well = Region{p.at("well").at(0).get<double>(), p.at("well").at(1).get<double>()};
    } else {
      part.well = Region{cfg.grid.lo, part.barrier_x};
    }
    if (!(part.left_minimum < part.barrier_x && part.barrier_x < part.right_minimum)) {
      throw ConfigError("config: partition needs left_minimum < barrier_x < right_minimum");
    }
    cfg.partition = part;
    cfg.partition_auto = false;
  }

  if (j.contains("spectrum")) {
    cfg.eigenpairs = j.at("spectrum").value("k", 4);
    if (cfg.eigenpairs < 2) throw ConfigError("config: spectrum.k must be >= 2");
    cfg.dump_operator_path = j.at("spectrum").value("dump_operator", std::string());
  }

  if (j.contains("evolve")) {
    const auto& e = j.at("evolve");
    cfg.dt = e.value("dt", 0.0);
    cfg.horizon = e.value("horizon", 0.0);
    cfg.sample_every = e.value("sample_every", 10);
    if (e.contains("snapshot_times")) {
      cfg.snapshot_times = e.at("snapshot_times").get<std::vector<double>>();
    }
    if (e.contains("initial")) {
      const auto& ic = e.at("initial");
      cfg.initial_kind = ic.value("type", std::string("gibbs_bump"));
      if (ic.contains("center")) {
        cfg.bump_center = ic.at("center").get<double>();
        cfg.bump_center_set = true;
      }
      cfg.bump_width = ic.value("width", 0.2);
      cfg.initial_csv = ic.value("csv", std::string());
    }
  }

  cfg.grid_policy = GridPolicy{cfg.grid.lo, cfg.grid.hi, cfg.grid.n, true, 200.0};
  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    cfg.grid_policy.scale_with_beta = s.value("scale_with_beta", true);
    cfg.grid_policy.nodes_per_beta = s.value("nodes_per_beta", 200.0);
  }

  cfg.threads = j.value("threads", 1);
  if (cfg.threads < 1) throw ConfigError("config: threads must be >= 1");
  cfg.out_dir = j.value("out", std::string("out"));
  return cfg;
}

std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, y;
    if (ss >> x >> y) {
      xs.push_back(x);
      ys.push_back(y);
    }
    // non-numeric lines (headers) are skipped
  }
  if (xs.size() < 3) throw ConfigError("CSV " + path + ": need at least 3 (x, U) rows");
  return {std::move(xs), std::move(ys)};
}

std::string manifest_json(const RunConfig& cfg, const std::string& subcommand) {
  json j;
  j["subcommand"] = subcommand;
  j["potential"]["family"] = cfg.potential.family_name();
  j["potential"]["dimension"] = cfg.potential.dimension();
  j["betas"] = cfg.betas;
  j["grid"] = {{"lo", cfg.grid.lo}, {"hi", cfg.grid.hi}, {"n", cfg.grid.n},
               {"dimension", cfg.grid.dim}};
  j["partition"] = cfg.partition_auto ? "auto" : "explicit";
  j["spectrum"]["k"] = cfg.eigenpairs;
  j["evolve"] = {{"dt", cfg.dt},
                 {"horizon", cfg.horizon},
                 {"sample_every", cfg.sample_every},
                 {"initial", cfg.initial_kind}};
  j["threads"] = cfg.threads;
  j["out"] = cfg.out_dir;
  return j.dump(2);
}

}  // namespace wittengap
