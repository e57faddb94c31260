#include <benchmark/benchmark.h>

#include "activemars/fit.hpp"
#include "activemars/rng.hpp"

using namespace activemars;

namespace {

DatasetSpec dataset(std::size_t n, std::size_t p) {
  DatasetSpec d;
  d.design.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  d.response.resize(static_cast<Eigen::Index>(n));
  CounterRng rng(3, 0);
  for (Eigen::Index i = 0; i < d.design.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.design.cols(); ++j) d.design(i, j) = rng.uniform();
    const double x1 = d.design(i, 0), x2 = d.design(i, 1 % d.design.cols());
    d.response(i) = x1 * x1 + x1 * x2 + x2 * x2 * x2 / 9.0;
  }
  return d;
}

// Args: n, p.
void BM_FitGreedy(benchmark::State& state) {
  const DatasetSpec d = dataset(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  FitConfig config;
  config.max_interaction = 2;
  for (auto _ : state) benchmark::DoNotOptimize(fit_greedy(d, config));
}
BENCHMARK(BM_FitGreedy)->Args({500, 2})->Args({500, 8})->Args({2000, 2})->Unit(benchmark::kMillisecond);

}  // namespace
