#include <cmath>

#include <benchmark/benchmark.h>

#include "activemars/partition.hpp"

using namespace activemars;

namespace {

void BM_Triangle(benchmark::State& state) {
  LinearConstraintSet c = LinearConstraintSet::unit_box(2);
  c.add_order(1, 0);
  const double min_volume = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(partition(c, min_volume));
}
BENCHMARK(BM_Triangle)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_Chain(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  LinearConstraintSet c = LinearConstraintSet::unit_box(p);
  for (std::size_t i = 0; i + 1 < p; ++i) c.add_order(i, i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(partition(c, 1e-6));
}
BENCHMARK(BM_Chain)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
