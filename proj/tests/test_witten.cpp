#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "wittengap/assemble.hpp"
#include "wittengap/spectrum.hpp"
#include "wittengap/witten.hpp"

using namespace wittengap;

TEST_SUITE("witten") {

TEST_CASE("effective potential of the quadratic family") {
  // V = -beta alpha d + beta^2 alpha^2 |x|^2
  const WittenContext ctx(Potential::quadratic(1.0), 2.0);
  CHECK(effective_potential(ctx, 0.0) == doctest::Approx(-2.0));
  CHECK(effective_potential(ctx, 1.0) == doctest::Approx(2.0));  // -2 + 4

  const WittenContext ctx3(Potential::quadratic(0.5, 3), 2.0);
  const std::vector<double> origin{0.0, 0.0, 0.0};
  CHECK(effective_potential(ctx3, origin) == doctest::Approx(-3.0));  // -beta alpha d
}

TEST_CASE("effective potential at the quartic barrier top") {
  // U''(0) = -4 h / a^2, U'(0) = 0: V(0) = -(beta/2) U''(0) = 16 at beta = 8
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  CHECK(effective_potential(ctx, 0.0) == doctest::Approx(16.0).epsilon(1e-12));
  const double fd = -0.5 * 8.0 *
                    oracles::second_central_diff(
                        [&ctx](double s) { return ctx.potential.profile(s); }, 0.0);
  CHECK(effective_potential(ctx, 0.0) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("effective potential agrees with finite differences of the energy") {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  auto u = [&ctx](double s) { return ctx.potential.profile(s); };
  for (int t = 0; t < 1000; ++t) {
    const double x = coord(rng);
    const double du = oracles::central_diff(u, x);
    const double ddu = oracles::second_central_diff(u, x);
    const double v_fd = -0.5 * ctx.beta * ddu + 0.25 * ctx.beta * ctx.beta * du * du;
    const double v = effective_potential(ctx, x);
    CHECK(std::abs(v - v_fd) <= 1e-5 * (1.0 + std::abs(v)));
  }
}

TEST_CASE("sign structure of V at the critical points of U") {
  // at minima of U: V = -(beta/2) Lap U < 0; at the 1-d maximum: V > 0
  const auto well = Potential::quartic_double_well(1.0, 1.0);
  for (double beta : {1.0, 2.0, 4.0, 8.0}) {
    const WittenContext ctx(well, beta);
    CHECK(effective_potential(ctx, 1.0) < 0.0);
    CHECK(effective_potential(ctx, -1.0) < 0.0);
    CHECK(effective_potential(ctx, 0.0) > 0.0);
  }
}

TEST_CASE("ground state is the normalized Gibbs amplitude") {
  const WittenContext ctx(Potential::quadratic(1.0), 2.0);
  const Grid grid = build_grid(-10.0, 10.0, 799, 1);
  const auto psi = ground_state(ctx, grid);

  double norm_sq = 0.0;
  for (double v : psi) {
    CHECK(v > 0.0);
    norm_sq += v * v;
  }
  norm_sq *= grid.spacing();
  CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));

  // psi ~ e^{-x^2} for U = x^2 at beta = 2
  const int mid = grid.n / 2;
  const double x = grid.node(mid + 40);
  const double x0 = grid.node(mid);
  const double expected = std::exp(-(x * x) + (x0 * x0));
  CHECK(psi[mid + 40] / psi[mid] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ground state survives extreme beta via log-space normalization") {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 200.0);
  const Grid grid = build_grid(-2.0, 2.0, 399, 1);
  const auto psi = ground_state(ctx, grid);
  double norm_sq = 0.0;
  for (double v : psi) norm_sq += v * v;
  CHECK(norm_sq * grid.spacing() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadratic form annihilates the ground state") {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const Grid grid = build_grid(-3.0, 3.0, 799, 1);
  const auto psi0 = ground_state(ctx, grid);
  // e^{beta U/2} psi0 is constant at the nodes, so every face difference vanishes
  CHECK(quadratic_form_check(ctx, grid, psi0) <= 1e-10);
}

TEST_CASE("quadratic form is nonnegative on random vectors") {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
  const Grid grid = build_grid(-3.0, 3.0, 199, 1);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> psi(grid.n);
    for (auto& v : psi) v = unit(rng);
    CHECK(quadratic_form_check(ctx, grid, psi) >= 0.0);
  }
}

TEST_CASE("quadratic form equals the assembled matrix form") {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
  const Grid grid = build_grid(-3.0, 3.0, 399, 1);
  const AssembledOperator op = assemble_schrodinger(ctx, grid);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> psi(grid.n);
    for (auto& v : psi) v = unit(rng);
    const auto hpsi = apply_operator(op, psi);
    double matrix_form = 0.0;
    for (int i = 0; i < grid.n; ++i) matrix_form += psi[i] * hpsi[i];
    const double q = quadratic_form_check(ctx, grid, psi);
    CHECK(q == doctest::Approx(matrix_form).epsilon(1e-11));
  }
}

TEST_CASE("quadratic form on the first excited state returns E1") {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const Grid grid = build_grid(-3.0, 3.0, 1599, 1);
  const auto spec = lowest_eigenpairs(assemble_schrodinger(ctx, grid), 2);
  const double q = quadratic_form_check(ctx, grid, spec.eigenvectors[1]);
  CHECK(q == doctest::Approx(spec.eigenvalues[1]).epsilon(1e-6));
}

TEST_CASE("d = 2 ground state and quadratic form") {
  const WittenContext ctx(Potential::quadratic(1.0, 2), 1.0);
  const Grid grid = build_grid(-8.0, 8.0, 63, 2);
  const auto psi0 = ground_state(ctx, grid);
  double norm_sq = 0.0;
  for (double v : psi0) norm_sq += v * v;
  norm_sq *= grid.spacing() * grid.spacing();
  CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quadratic_form_check(ctx, grid, psi0) <= 1e-10);
}

}  // TEST_SUITE
