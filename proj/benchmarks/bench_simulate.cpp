#include <benchmark/benchmark.h>

#include "verhulst/random.hpp"
#include "verhulst/simulate.hpp"

namespace {

using namespace verhulst;

void BM_FunctionalSummary(benchmark::State& state) {
  const sim::ModelParams params{0.0, 1.0, 1.0, sim::Mode::Generic};
  const sim::TimeGrid grid{1.0, static_cast<std::size_t>(state.range(0))};
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng(42, i++);
    benchmark::DoNotOptimize(sim::simulate_functional_summary(params, grid, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FunctionalSummary)->Arg(100)->Arg(1000);

void BM_EulerPath(benchmark::State& state) {
  const sim::ModelParams params{0.0, 1.0, 1.0, sim::Mode::Generic};
  const sim::TimeGrid grid{1.0, static_cast<std::size_t>(state.range(0))};
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_sde_euler(params, grid, 42, i++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EulerPath)->Arg(1000);

}  // namespace
