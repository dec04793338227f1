// Serial reference kernels against their OpenMP versions. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "berrykit/berry.hpp"
#include "berrykit/kernels.hpp"

using namespace bk;
using namespace bk::kernels;

namespace {

void BM_GridSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_grid_serial(4, 200, 1, 20));
}
void BM_GridParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_grid_parallel(4, 200, 1, 20));
}

void BM_ArithmeticLegSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arithmetic_leg_serial(4, 1000000));
}
void BM_ArithmeticLegParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arithmetic_leg_parallel(4, 1000000));
}

NamingBackend backend_for(int64_t kind) {
  return NamingBackend{kind == 0 ? BackendKind::Semantic : BackendKind::Prover, 32, &Theory::q()};
}

void BM_NameTableSerial(benchmark::State& state) {
  const auto formulas = enumerate_formulas(static_cast<std::size_t>(state.range(0)));
  const auto backend = backend_for(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(name_table_serial(formulas, backend));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(formulas.size()));
}
void BM_NameTableParallel(benchmark::State& state) {
  const auto formulas = enumerate_formulas(static_cast<std::size_t>(state.range(0)));
  const auto backend = backend_for(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(name_table_parallel(formulas, backend));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(formulas.size()));
}

void BM_FirstNamerSerial(benchmark::State& state) {
  const auto formulas = enumerate_formulas(7);
  const auto backend = backend_for(1);
  for (auto _ : state) benchmark::DoNotOptimize(first_namer_serial(formulas, static_cast<Nat>(state.range(0)), backend));
}
void BM_FirstNamerParallel(benchmark::State& state) {
  const auto formulas = enumerate_formulas(7);
  const auto backend = backend_for(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(first_namer_parallel(formulas, static_cast<Nat>(state.range(0)), backend));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArithmeticLegSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArithmeticLegParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NameTableSerial)->Args({8, 0})->Args({6, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NameTableParallel)->Args({8, 0})->Args({6, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstNamerSerial)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstNamerParallel)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
