#include <benchmark/benchmark.h>

#include "avo/curves.hpp"
#include "avo/densities.hpp"
#include "avo/symplectic.hpp"

using namespace avo;

static void BM_CensusGSp4Mod2(benchmark::State& state) {
  sympl::CensusSpec spec;
  spec.g = 2;
  spec.n = 2;
  spec.cls = sympl::CensusClass::C;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sympl::census(spec));
  }
}
BENCHMARK(BM_CensusGSp4Mod2);

static void BM_CensusGL2Mod13(benchmark::State& state) {
  sympl::CensusSpec spec;
  spec.g = 1;
  spec.n = 13;
  spec.cls = sympl::CensusClass::C;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sympl::census(spec));
  }
}
BENCHMARK(BM_CensusGL2Mod13);

static void BM_Lambda(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  std::uint64_t l = 16777213;  // largest prime below 2^24
  for (auto _ : state) {
    benchmark::DoNotOptimize(dens::lambda(g, l));
  }
}
BENCHMARK(BM_Lambda)->Arg(1)->Arg(2)->Arg(4);

static void BM_UniversalConstant(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dens::universal_constant(2, n));
  }
}
BENCHMARK(BM_UniversalConstant)->Arg(8)->Arg(12)->Arg(16);

static void BM_CountPointsK1(benchmark::State& state) {
  const auto& c = curves::builtin_curve("e_x3x1");
  std::uint64_t p = 99991;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curves::count_points(c, p, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}
BENCHMARK(BM_CountPointsK1);

static void BM_CountPointsK2(benchmark::State& state) {
  const auto& c = curves::builtin_curve("g2_x5mx1");
  std::uint64_t p = 997;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curves::count_points(c, p, 2));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p) * p);
}
BENCHMARK(BM_CountPointsK2);

static void BM_FrobeniusRecordGenus2(benchmark::State& state) {
  const auto& c = curves::builtin_curve("g2_x5mx1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(curves::frobenius_record(c, 499));
  }
}
BENCHMARK(BM_FrobeniusRecordGenus2);

BENCHMARK_MAIN();
