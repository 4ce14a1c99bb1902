#include <benchmark/benchmark.h>

#include "fkdet/algebra.hpp"
#include "fkdet/catalog.hpp"
#include "fkdet/determinant.hpp"
#include "fkdet/series.hpp"

using namespace fkdet;

static void BM_MultiplyExact(benchmark::State& state) {
  const auto g = gram(free_operator(4).element);
  auto x = g;
  for (int i = 1; i < state.range(0); ++i) x = multiply(x, g);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(x, g));
}
BENCHMARK(BM_MultiplyExact)->DenseRange(1, 3);

static void BM_MultiplyThreaded(benchmark::State& state) {
  const auto g = to_float(gram(free_operator(4).element));
  const auto x = multiply(multiply(g, g), g);
  const MultiplyOptions opts{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(multiply(x, g, opts));
}
BENCHMARK(BM_MultiplyThreaded)->Arg(1)->Arg(4);

static void BM_PowerTracesExact(benchmark::State& state) {
  const auto a = free_operator(3).element;
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_traces(a, N));
}
BENCHMARK(BM_PowerTracesExact)->DenseRange(2, 6, 2);

static void BM_PowerTracesWirtinger(benchmark::State& state) {
  const auto rep = read_rep_file(default_data_dir() / "fig8_wirtinger.rep");
  const auto a = fig8_wirtinger<Complex>(1.0, rep).element;
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_traces(a, N));
}
BENCHMARK(BM_PowerTracesWirtinger)->DenseRange(2, 6, 2);

static void BM_SeriesBounds(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  ApproxParams p;
  p.N = N;
  p.lambda = Rational(1, 9);
  p.policy = LambdaPolicy::Explicit;
  for (auto _ : state) benchmark::DoNotOptimize(upper_bounds(free_series(3, N), p));
}
BENCHMARK(BM_SeriesBounds)->Arg(40)->Arg(400);
BENCHMARK_MAIN();
