#include <benchmark/benchmark.h>

#include <algorithm>
#include <array>

#include "distroc/probit.hpp"
#include "distroc/rng.hpp"
#include "distroc/rocglm.hpp"
#include "distroc/simgen.hpp"
#include "distroc/simulation.hpp"

using namespace distroc;

namespace {

DesignBlock random_block(std::size_t rows) {
  CounterRng rng(7);
  DesignBlock block(2);
  std::array<double, 2> x{1.0, 0.0};
  for (std::size_t i = 0; i < rows; ++i) {
    x[1] = rng.normal();
    block.add_row(rng.bernoulli(std::clamp(0.5 + 0.3 * x[1], 0.05, 0.95)) ? 1 : 0, x);
  }
  return block;
}

const std::array<double, 2> kTheta{0.3, 0.9};

void BM_ContributionSerial(benchmark::State& state) {
  const DesignBlock block = random_block(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(local_contribution_serial(block, kTheta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ContributionOmp(benchmark::State& state) {
  const DesignBlock block = random_block(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(local_contribution(block, kTheta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Simulation(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.reps = 8;
  cfg.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
}

}  // namespace

BENCHMARK(BM_ContributionSerial)->Arg(10000)->Arg(125000);
BENCHMARK(BM_ContributionOmp)->Arg(10000)->Arg(125000);
BENCHMARK(BM_Simulation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
