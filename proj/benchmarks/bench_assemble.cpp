#include <benchmark/benchmark.h>

#include "wittengap/assemble.hpp"

using namespace wittengap;

static void BM_AssembleSchrodinger(benchmark::State& state) {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const Grid grid = build_grid(-3.0, 3.0, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_schrodinger(ctx, grid));
  }
}
BENCHMARK(BM_AssembleSchrodinger)->Arg(399)->Arg(1599)->Arg(6399);

static void BM_AssembleFokkerPlanck(benchmark::State& state) {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  const Grid grid = build_grid(-3.0, 3.0, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_fokker_planck(ctx, grid));
  }
}
BENCHMARK(BM_AssembleFokkerPlanck)->Arg(1599);

static void BM_ApplyOperator2d(benchmark::State& state) {
  const WittenContext ctx(Potential::quadratic(1.0, 2), 1.0);
  const Grid grid = build_grid(-10.0, 10.0, static_cast<int>(state.range(0)), 2);
  const AssembledOperator op = assemble_schrodinger(ctx, grid);
  std::vector<double> v(op.grid.total_nodes(), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_operator(op, v));
  }
}
BENCHMARK(BM_ApplyOperator2d)->Arg(99)->Arg(199);

BENCHMARK_MAIN();
