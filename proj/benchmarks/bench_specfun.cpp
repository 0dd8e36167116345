#include <benchmark/benchmark.h>

#include "verhulst/specfun.hpp"

namespace {

using namespace verhulst::specfun;

// t selects the working precision: double, long double, binary128.
void BM_Theta(benchmark::State& state) {
  const QuadConfig cfg = default_quad_config();
  const double t = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(hartman_watson_theta(2.0, t, cfg));
}
BENCHMARK(BM_Theta)->Arg(100)->Arg(30)->Arg(15);

void BM_BesselI(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_i(BesselOrder(1.3), x));
}
BENCHMARK(BM_BesselI)->Arg(2)->Arg(20)->Arg(45);

void BM_BesselK(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_k(BesselOrder(1.3), x));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(10)->Arg(40);

}  // namespace
