#include <benchmark/benchmark.h>

#include "activemars/cmatrix.hpp"
#include "activemars/oracle.hpp"
#include "random_model.hpp"

using namespace activemars;

namespace {

void BM_MonteCarloC(benchmark::State& state) {
  const MarsModel model = bench::random_model(4, 20, 2, 1);
  const PriorSpec prior = bench::unit_prior(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_C(model, prior, n, 7, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloC)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_QuadratureC(benchmark::State& state) {
  const MarsModel model = bench::random_model(4, static_cast<std::size_t>(state.range(0)), 2, 1);
  const PriorSpec prior = bench::unit_prior(4);
  for (auto _ : state) benchmark::DoNotOptimize(quad_C(model, prior));
}
BENCHMARK(BM_QuadratureC)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

// Closed form on the same model, for scale.
void BM_ClosedFormC(benchmark::State& state) {
  const MarsModel model = bench::random_model(4, static_cast<std::size_t>(state.range(0)), 2, 1);
  const PriorSpec prior = bench::unit_prior(4);
  for (auto _ : state) benchmark::DoNotOptimize(compute_C(model, prior));
}
BENCHMARK(BM_ClosedFormC)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

}  // namespace
