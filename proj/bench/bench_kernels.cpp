#include <benchmark/benchmark.h>

#include "gbound/kernels.hpp"
#include "gbound/physics.hpp"
#include "gbound/random.hpp"
#include "gbound/ultraquantum.hpp"

using namespace gbound;

namespace {

CMat bench_matrix(int d) {
  Rng rng = make_stream(5, static_cast<std::uint64_t>(d));
  return random_complex_matrix(d, d, rng);
}

void BM_AscentSerial(benchmark::State& state) {
  const CMat theta = bench_matrix(static_cast<int>(state.range(0)));
  const AscentOptions opts{128, 500, 42, 1e-12};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ascent_serial(theta, opts).best.value);
}

void BM_AscentParallel(benchmark::State& state) {
  const CMat theta = bench_matrix(static_cast<int>(state.range(0)));
  const AscentOptions opts{128, 500, 42, 1e-12};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ascent_parallel(theta, opts).best.value);
}

void BM_GridSerial(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const CMat theta = bench_matrix(d);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::grid_serial(theta, d == 2 ? 16 : 8).value);
}

void BM_GridParallel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const CMat theta = bench_matrix(d);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::grid_parallel(theta, d == 2 ? 16 : 8).value);
}

void BM_SamplerSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exdc_Q_bound_sample_serial(0.5, 1.0 / 2.25, state.range(0), 42));
}

void BM_SamplerParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exdc_Q_bound_sample(0.5, 1.0 / 2.25, state.range(0), 42));
}

void BM_AscentPi(benchmark::State& state) {
  const CMat pi = build_Pi(std::polar(1.0, 0.448799));
  const AscentOptions opts{200, 500, 42, 1e-12};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ascent_parallel(pi, opts).best.value);
}

}  // namespace

BENCHMARK(BM_AscentSerial)->Arg(2)->Arg(6)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AscentParallel)->Arg(2)->Arg(6)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplerSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplerParallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AscentPi)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
