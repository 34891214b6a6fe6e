#include <benchmark/benchmark.h>

#include "wittengap/semiclassics.hpp"

using namespace wittengap;

static void BM_FreeEnergy(benchmark::State& state) {
  const auto pot = Potential::quartic_double_well(1.0, 1.0);
  const double beta = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_energy(pot, Region{0.0, 3.0}, beta));
  }
}
BENCHMARK(BM_FreeEnergy)->Arg(8)->Arg(64);

static void BM_BohrSommerfeldAction(benchmark::State& state) {
  const WittenContext ctx(Potential::quartic_double_well(1.0, 1.0), 8.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bohr_sommerfeld_action(ctx, Region{0.0, 2.0}));
  }
}
BENCHMARK(BM_BohrSommerfeldAction);

static void BM_WkbSplitting(benchmark::State& state) {
  const auto pot = Potential::quartic_double_well(1.0, 1.0);
  const WittenContext ctx(pot, 10.0);
  const auto part = auto_partition(pot, Region{-3.0, 3.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(wkb_splitting(ctx, part));
  }
}
BENCHMARK(BM_WkbSplitting);
