#include <benchmark/benchmark.h>

#include "activemars/moments.hpp"

using namespace activemars;

namespace {

template <class M>
void run(benchmark::State& state, const M& m) {
  const int r = static_cast<int>(state.range(0));
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncated_moment(r, a, 0.9, m));
    a = a < 0.5 ? a + 1e-3 : 0.1;
  }
}

void BM_Uniform(benchmark::State& s) { run(s, Uniform{}); }
void BM_Beta(benchmark::State& s) { run(s, Beta{2.5, 4.0}); }
void BM_Gamma(benchmark::State& s) { run(s, Gamma{3.0, 2.0}); }
void BM_TruncNormal(benchmark::State& s) { run(s, TruncNormal{0.4, 0.2, 0.0, 1.0}); }

BENCHMARK(BM_Uniform)->DenseRange(0, 2);
BENCHMARK(BM_Beta)->DenseRange(0, 2);
BENCHMARK(BM_Gamma)->DenseRange(0, 2);
BENCHMARK(BM_TruncNormal)->DenseRange(0, 2);

void BM_NormalFarTail(benchmark::State& state) {
  const TruncNormal m{};
  for (auto _ : state) benchmark::DoNotOptimize(truncated_moment(2, 30.0, 30.0 + 1e-7, m));
}
BENCHMARK(BM_NormalFarTail);

}  // namespace
