#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wittengap/ratescan.hpp"

using namespace wittengap;

namespace {

WellPartition quartic_partition() {
  return auto_partition(Potential::quartic_double_well(1.0, 1.0), Region{-3.0, 3.0});
}

GridPolicy quartic_policy(int base_n = 1599) {
  return GridPolicy{-3.0, 3.0, base_n, true, 200.0};
}

ScanTable synthetic_table(double slope) {
  ScanTable t;
  for (double beta : {2.0, 4.0, 6.0, 8.0}) {
    ScanRow row;
    row.converged = true;
    row.estimates.beta = beta;
    row.estimates.e1_numeric = 0.7 * std::exp(slope * beta);
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace

TEST_SUITE("ratescan") {

TEST_CASE("grid policy scales with beta") {
  const GridPolicy p = quartic_policy();
  CHECK(p.nodes_for(6.0, 1.0) == 1599);
  CHECK(p.nodes_for(12.0, 1.0) == 2400);
  GridPolicy fixed = p;
  fixed.scale_with_beta = false;
  CHECK(fixed.nodes_for(12.0, 1.0) == 1599);
}

TEST_CASE("synthetic rates give the exact slope and r^2 = 1") {
  const ArrheniusFit fit = arrhenius_fit(synthetic_table(-2.0), RateColumn::Numeric);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.implied_delta_u() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scan preconditions") {
  CHECK_THROWS_AS(beta_scan(Potential::quartic_double_well(1.0, 1.0), {4.0},
                            quartic_partition(), quartic_policy()),
                  ConfigError);
  CHECK_THROWS_AS(beta_scan(Potential::quartic_double_well(1.0, 1.0), {4.0, 3.0},
                            quartic_partition(), quartic_policy()),
                  ConfigError);
  ScanTable empty;
  CHECK_THROWS_AS(arrhenius_fit(empty, RateColumn::Numeric), ConfigError);
}

TEST_CASE("quadratic family: gap column is 2 beta alpha, no Arrhenius decay") {
  // single well: the semiclassic estimators are inapplicable (left at 0),
  // the numeric gap column carries 2 beta alpha
  const auto quad = Potential::quadratic(0.5);
  WellPartition stub;  // no genuine barrier; the origin stands in
  stub.barrier_x = 0.0;
  stub.left_minimum = 0.0;
  stub.right_minimum = 0.0;
  stub.well = Region{-10.0, 0.0};
  const GridPolicy policy{-10.0, 10.0, 1599, false, 200.0};
  const ScanTable table = beta_scan(quad, {1.0, 2.0, 4.0}, stub, policy);
  const double alpha = 0.5;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double beta = table.rows[i].estimates.beta;
    CHECK(table.rows[i].converged);
    CHECK(table.rows[i].estimates.e1_numeric ==
          doctest::Approx(2.0 * beta * alpha).epsilon(0.005));
    CHECK(table.rows[i].estimates.e1_wkb == 0.0);
    CHECK(table.rows[i].estimates.e1_arrhenius == 0.0);
  }
  // the "rate" grows with beta: a positive slope flags the Arrhenius law as
  // inapplicable for the single well
  const ArrheniusFit fit = arrhenius_fit(table, RateColumn::Numeric);
  CHECK(fit.slope > 0.0);
}

TEST_CASE("quartic benchmark scan: slopes, monotonicity and cross-estimator accord") {
  const ScanTable table = beta_scan(Potential::quartic_double_well(1.0, 1.0),
                                    {6.0, 8.0, 10.0, 12.0}, quartic_partition(),
                                    quartic_policy());
  for (const auto& row : table.rows) {
    CHECK(row.converged);
    CHECK(row.warning.empty());
    CHECK(row.estimates.delta_u == doctest::Approx(1.0).epsilon(1e-9));
  }
  // metastability deepens: the gap strictly decreases in beta
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].estimates.e1_numeric < table.rows[i - 1].estimates.e1_numeric);
  }

  // The numeric gap carries a prefactor ~ beta on top of e^{-beta dU}, so
  // an unweighted log-linear fit over beta in [6, 12] reads the slope as
  // dU - d(ln beta)/d(beta) ~ 1 - 1/9.  Frozen from the first verified run;
  // the estimators must agree with the fit, not remove the bias.
  const ArrheniusFit numeric = arrhenius_fit(table, RateColumn::Numeric);
  CHECK(numeric.r_squared >= 0.999);
  CHECK(numeric.implied_delta_u() == doctest::Approx(0.878).epsilon(0.02));

  for (auto col : {RateColumn::Wkb, RateColumn::Arrhenius, RateColumn::Eyring,
                   RateColumn::Surface}) {
    const ArrheniusFit fit = arrhenius_fit(table, col);
    CHECK(std::abs(fit.implied_delta_u() - numeric.implied_delta_u()) <= 0.05);
  }
}

TEST_CASE("rows near the discretization floor carry a warning") {
  // at beta = 40 the splitting (~1e-15) sits below 1e3 x eps ||H||
  const auto pot = Potential::quartic_double_well(1.0, 1.0);
  const GridPolicy policy{-2.0, 2.0, 799, false, 200.0};
  const ScanRow row = rate_estimates(pot, 40.0, quartic_partition(), policy);
  CHECK(row.converged);
  CHECK_FALSE(row.warning.empty());
  CHECK(row.warning.find("floor") != std::string::npos);
}

TEST_CASE("scan output is deterministic across thread counts") {
  const auto pot = Potential::quartic_double_well(1.0, 1.0);
  const std::vector<double> betas{5.0, 7.0, 9.0};
  const GridPolicy policy{-3.0, 3.0, 399, false, 200.0};
  const ScanTable seq = beta_scan(pot, betas, quartic_partition(), policy, 1);
  const ScanTable par = beta_scan(pot, betas, quartic_partition(), policy, 3);
  std::ostringstream a, b;
  write_scan_csv(seq, a);
  write_scan_csv(par, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, a.str().find('\n')) ==
        "beta,E1_numeric,E1_wkb,E1_arrhenius,E1_eyring,E1_surface,deltaU,F0,F1,p0,vol");
}

TEST_CASE("golden scan values for the quartic benchmark") {
  // pinned after the first verified run (policy [-3,3], base 399, no beta
  // scaling); regression-guards the full estimator pipeline
  const auto pot = Potential::quartic_double_well(1.0, 1.0);
  const GridPolicy policy{-3.0, 3.0, 1599, false, 200.0};
  const ScanRow row = rate_estimates(pot, 8.0, quartic_partition(), policy);
  CHECK(row.estimates.e1_numeric == doctest::Approx(4.5751807016e-3).epsilon(1e-6));
  CHECK(row.estimates.e1_surface == doctest::Approx(row.estimates.e1_numeric).epsilon(0.02));
  CHECK(row.estimates.p0 == doctest::Approx(4.0).epsilon(1e-9));  // sqrt(V(0)) = sqrt(2 beta)
}

}  // TEST_SUITE
