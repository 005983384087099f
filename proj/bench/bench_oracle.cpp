// Powerset scan: OpenMP kernel vs the serial set-based reference.
#include <benchmark/benchmark.h>

#include <random>

#include "finarg/oracle.hpp"

namespace {

finarg::FiniteAF random_af(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<finarg::Attack> att;
  for (finarg::ArgumentId i = 0; i < n; ++i)
    for (finarg::ArgumentId j = 0; j < n; ++j)
      if (rng() % 100 < 15) att.push_back({i, j});
  return finarg::FiniteAF(n, std::move(att));
}

void BM_Parallel(benchmark::State& state) {
  const auto af = random_af(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(finarg::enumerate(af, finarg::Semantics::complete));
}

void BM_Serial(benchmark::State& state) {
  const auto af = random_af(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(finarg::enumerate_serial(af, finarg::Semantics::complete));
}

}  // namespace

BENCHMARK(BM_Parallel)->Arg(12)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial)->Arg(12)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
