#include <benchmark/benchmark.h>

#include "cslab/lcs.hpp"
#include "cslab/rng.hpp"

namespace {

using namespace cslab;

void BM_LcsDp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BinaryString a = random_string(n, Seed{1, 0});
  const BinaryString b = random_string(n, Seed{1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(lcs_dp(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsDp)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_LcsBitParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BinaryString a = random_string(n, Seed{1, 0});
  const BinaryString b = random_string(n, Seed{1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(lcs_bitparallel(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsBitParallel)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNSquared);

}  // namespace
