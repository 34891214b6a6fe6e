#include <benchmark/benchmark.h>

#include "wittengap/evolution.hpp"

using namespace wittengap;

static void BM_CrankNicolsonSteps(benchmark::State& state) {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 6.0);
  const Grid grid = build_grid(-3.0, 3.0, static_cast<int>(state.range(0)), 1);
  const AssembledOperator fp = assemble_fokker_planck(ctx, grid);
  const auto f0 = gibbs_modulated_bump(ctx, grid, -1.0, 0.2);
  EvolveOptions opts;
  opts.dt = 0.1;
  opts.horizon = 100.0;  // 1000 steps
  opts.sample_every = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(fp, f0, opts));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_CrankNicolsonSteps)->Unit(benchmark::kMillisecond)->Arg(399)->Arg(1599);
