#include <benchmark/benchmark.h>

#include <cstdint>

#include "classsieve/arithmetic.hpp"
#include "classsieve/classnumbers.hpp"
#include "classsieve/elliptic.hpp"
#include "classsieve/qseries.hpp"
#include "classsieve/sigma.hpp"

using namespace classsieve;

static void BM_Kronecker(benchmark::State& state) {
  std::int64_t acc = 0;
  for (auto _ : state) {
    for (std::int64_t a = -1000; a < 1000; ++a) acc += kronecker(a, 1'000'003);
  }
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_Kronecker);

static void BM_ClassNumberTable(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ClassNumberTable::build(state.range(0), {kDefaultTableCeiling, threads}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClassNumberTable)->Args({100'000, 1})->Args({1'000'000, 1})->Args({1'000'000, 4})->Unit(benchmark::kMillisecond);

static void BM_HurwitzTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hurwitz_table(state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HurwitzTable)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_BuildHSigma(benchmark::State& state) {
  const LocalConditions sigma{5, {}, {3}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(build_h_sigma(sigma, state.range(0)));
}
BENCHMARK(BM_BuildHSigma)->Arg(2'000)->Arg(20'000)->Unit(benchmark::kMillisecond);

static void BM_Search(benchmark::State& state) {
  const LocalConditions sigma{5, {}, {3}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(search_discriminants(sigma, state.range(0)));
}
BENCHMARK(BM_Search)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_RankZeroTwists(benchmark::State& state) {
  const CurveData e = make_curve({0, -1, 1, 20, -8}, 203, 5, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_zero_twists(e, state.range(0), RankZeroOptions{kDefaultTableCeiling, 1, true}));
  }
}
BENCHMARK(BM_RankZeroTwists)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
