// Serial reference vs OpenMP kernels: scenario sweeps and stream encoding.

#include <benchmark/benchmark.h>

#include "desco/desco.hpp"
#include "desco/sweep.hpp"

namespace {

using namespace desco;

const DescoCode& code_for(int B, int T) {
  static const DescoCode c23 = desco_construct(2, 3, 2);
  static const DescoCode c36 = desco_construct(3, 6, 2);
  return B == 2 && T == 3 ? c23 : c36;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto& code = code_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(code, Receiver::user2).certified);
}

void BM_SweepParallel(benchmark::State& state) {
  const auto& code = code_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(code, Receiver::user2).certified);
}

void BM_EncodeSerial(benchmark::State& state) {
  const auto& code = code_for(3, 6);
  const auto source = random_source(code.source_rows(), state.range(0), code.field_bits(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(encode_serial(code, source));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EncodeParallel(benchmark::State& state) {
  const auto& code = code_for(3, 6);
  const auto source = random_source(code.source_rows(), state.range(0), code.field_bits(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(encode(code, source));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Args({2, 3})->Args({3, 6})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Args({2, 3})->Args({3, 6})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EncodeSerial)->Arg(1 << 12)->Arg(1 << 16)->UseRealTime();
BENCHMARK(BM_EncodeParallel)->Arg(1 << 12)->Arg(1 << 16)->UseRealTime();

BENCHMARK_MAIN();
