#include <benchmark/benchmark.h>

#include "hoalg/enveloping.hpp"
#include "hoalg/formality.hpp"
#include "hoalg/homotopy.hpp"
#include "hoalg/opcohomology.hpp"
#include "hoalg/symgroup.hpp"

using namespace hoalg;

namespace {

void BM_Transfer(benchmark::State& state, const char* name) {
  DgAlgebra a = fixture(name);
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transfer_minimal_model(a, N));
}
BENCHMARK_CAPTURE(BM_Transfer, F2, "F2")->DenseRange(3, 5);
BENCHMARK_CAPTURE(BM_Transfer, F3b, "F3b")->DenseRange(3, 5);
BENCHMARK_CAPTURE(BM_Transfer, F5, "F5")->DenseRange(3, 5);

// barr_idempotent caches per n; this times the splitting itself
void BM_BarrSplitting(benchmark::State& state) {
  auto ctx = hochschild_context(cohomology_algebra(fixture_F2()).algebra);
  int n = static_cast<int>(state.range(0));
  barr_idempotent(n);
  for (auto _ : state) benchmark::DoNotOptimize(barr_splitting(ctx, n));
}
BENCHMARK(BM_BarrSplitting)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Envelope(benchmark::State& state) {
  DgAlgebra L = fixture_F5();
  int W = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(envelope(L, W));
}
BENCHMARK(BM_Envelope)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Quillen(benchmark::State& state) {
  DgAlgebra L = fixture_F3b();
  for (auto _ : state) benchmark::DoNotOptimize(quillen_check(L, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Quillen)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CompareComAss(benchmark::State& state, const char* name) {
  DgAlgebra a = fixture(name);
  for (auto _ : state) benchmark::DoNotOptimize(compare_com_vs_ass(a, static_cast<int>(state.range(0))));
}
BENCHMARK_CAPTURE(BM_CompareComAss, F2, "F2")->DenseRange(3, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CompareComAss, F4, "F4")->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CompareLieAss(benchmark::State& state) {
  DgAlgebra L = fixture_F3b();
  for (auto _ : state) benchmark::DoNotOptimize(compare_lie_vs_ass(L, 4, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompareLieAss)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
