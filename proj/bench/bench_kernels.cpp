// Serial kernels against their OpenMP counterparts. The thread count is the
// benchmark argument; 0 selects the serial implementation.

#include <benchmark/benchmark.h>

#include "pathgroup/parallel.hpp"

using namespace pathgroup;

namespace {

const MeasureSpec kSpec{64, 22.6, 3, 42};

void BM_SampleBall(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto out = threads == 0 ? sample_ball(kSpec, 512) : parallel::sample_ball(kSpec, 512, threads);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * 512);
}

void BM_CostMatrix(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const EmpiricalMeasure a(sample_ball(kSpec, 256));
  const EmpiricalMeasure b(sample_ball(MeasureSpec{64, 22.6, 3, 43}, 256));
  for (auto _ : state) {
    Matrix c = threads == 0 ? cost_matrix(a, b) : parallel::cost_matrix(a, b, threads);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * 256 * 256);
}

void BM_EscapeFraction(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const StepPath g = sample_ball_point(MeasureSpec{64, 1.0, 3, 7}, 0);
  for (auto _ : state) {
    double v = threads == 0 ? escape_fraction(kSpec, g, 500) : parallel::escape_fraction(kSpec, g, 500, threads);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * 500);
}

void BM_ExactAssignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EmpiricalMeasure a(sample_ball(MeasureSpec{8, 1.0, 3, 1}, n));
  const EmpiricalMeasure b(sample_ball(MeasureSpec{8, 1.0, 3, 2}, n));
  const Matrix cost = cost_matrix(a, b);
  for (auto _ : state) benchmark::DoNotOptimize(mk_exact(cost).value);
  state.SetComplexityN(n);
}

void thread_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int t = 1; t <= parallel::default_threads(); t *= 2) b->Arg(t);
  b->UseRealTime();
}

}  // namespace

BENCHMARK(BM_SampleBall)->Apply(thread_args);
BENCHMARK(BM_CostMatrix)->Apply(thread_args);
BENCHMARK(BM_EscapeFraction)->Apply(thread_args);
BENCHMARK(BM_ExactAssignment)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed);

BENCHMARK_MAIN();
