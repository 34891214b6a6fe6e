#include <benchmark/benchmark.h>

#include "wittengap/spectrum.hpp"

using namespace wittengap;

static void BM_TridiagonalLowestTwo(benchmark::State& state) {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const Grid grid = build_grid(-3.0, 3.0, static_cast<int>(state.range(0)), 1);
  const AssembledOperator op = assemble_schrodinger(ctx, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowest_eigenpairs(op, 2));
  }
}
BENCHMARK(BM_TridiagonalLowestTwo)->Arg(399)->Arg(1599)->Arg(6399);

static void BM_Lanczos2dLowestFour(benchmark::State& state) {
  const WittenContext ctx(Potential::quadratic(1.0, 2), 1.0);
  const Grid grid = build_grid(-10.0, 10.0, static_cast<int>(state.range(0)), 2);
  const AssembledOperator op = assemble_schrodinger(ctx, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowest_eigenpairs(op, 4));
  }
}
BENCHMARK(BM_Lanczos2dLowestFour)->Unit(benchmark::kMillisecond)->Arg(99)->Arg(199);

static void BM_SurfaceFormula(benchmark::State& state) {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const Grid grid = build_grid(-3.0, 3.0, 1599, 1);
  const auto part = auto_partition(ctx.potential, Region{-3.0, 3.0});
  const auto spec = lowest_eigenpairs(assemble_schrodinger(ctx, grid), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        surface_formula_e1(spec.eigenvectors[0], spec.eigenvectors[1], part, grid));
  }
}
BENCHMARK(BM_SurfaceFormula);
