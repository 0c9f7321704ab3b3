#include <benchmark/benchmark.h>

#include "cslab/binary_string.hpp"
#include "cslab/lcs.hpp"
#include "cslab/model_b.hpp"
#include "cslab/network.hpp"
#include "cslab/rng.hpp"

namespace {

using namespace cslab;

// n diagonal time steps of the string network from the step initial condition.
void BM_NetworkEvolveStepIc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BinaryString a = random_string(n, Seed{2, 0});
  const BinaryString b = random_string(n, Seed{2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(evolve_step_ic(a, b, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NetworkEvolveStepIc)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNSquared);

// One model B half-step on a stationary ring of length L.
void BM_ModelBHalfStep(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const double u = stationary_u(0.5).u;
  ModelBEvolution evo(sample_stationary_half_filled(L, u, 3), ModelBParams{}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(evo.advance());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(L));
}
BENCHMARK(BM_ModelBHalfStep)->RangeMultiplier(8)->Range(1024, 1 << 20);

}  // namespace
