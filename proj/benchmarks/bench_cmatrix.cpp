#include <benchmark/benchmark.h>

#include "activemars/cmatrix.hpp"
#include "activemars/incremental.hpp"
#include "activemars/integrals.hpp"
#include "random_model.hpp"

using namespace activemars;

namespace {

// Args: p, M.
void BM_ComputeC(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const MarsModel model = bench::random_model(p, m, 3, 1);
  const PriorSpec prior = bench::unit_prior(p);
  ComputeOptions options;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(compute_C(model, prior, options));
  state.SetComplexityN(static_cast<std::int64_t>(p * m * m));
}
BENCHMARK(BM_ComputeC)
    ->ArgsProduct({{2, 8, 32, 128}, {25, 50, 100}})
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void BM_ComputeCLowMemory(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const MarsModel model = bench::random_model(p, 100, 3, 1);
  const PriorSpec prior = bench::unit_prior(p);
  ComputeOptions options;
  options.threads = 1;
  options.low_memory = true;
  for (auto _ : state) benchmark::DoNotOptimize(compute_C(model, prior, options));
}
BENCHMARK(BM_ComputeCLowMemory)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ComputeCHadamard(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const MarsModel model = bench::random_model(p, 100, 3, 1);
  const PriorSpec prior = bench::unit_prior(p);
  ComputeOptions options;
  options.threads = 1;
  options.hadamard_epsilon = 1e-12;
  for (auto _ : state) benchmark::DoNotOptimize(compute_C(model, prior, options));
}
BENCHMARK(BM_ComputeCHadamard)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_IntegralPass(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const MarsModel model = bench::random_model(p, 100, 3, 1);
  const ProductPrior prior = bench::unit_prior(p);
  for (auto _ : state) benchmark::DoNotOptimize(compute_integrals(model, prior, 1));
}
BENCHMARK(BM_IntegralPass)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_IncrementalBirth(benchmark::State& state) {
  const std::size_t p = 16;
  const MarsModel model = bench::random_model(p, static_cast<std::size_t>(state.range(0)), 3, 1);
  const MarsModel extra = bench::random_model(p, 1, 3, 2);
  const ProductPrior prior = bench::unit_prior(p);
  for (auto _ : state) {
    state.PauseTiming();
    IncrementalCBuilder builder(model, prior);
    state.ResumeTiming();
    benchmark::DoNotOptimize(builder.birth(extra.basis()[0], 0.5));
  }
}
BENCHMARK(BM_IncrementalBirth)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
