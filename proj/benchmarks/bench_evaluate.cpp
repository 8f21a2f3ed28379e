#include <benchmark/benchmark.h>

#include "mecwave/encoding.hpp"
#include "mecwave/operators.hpp"
#include "mecwave/optimizers.hpp"
#include "mecwave/sysmodel.hpp"

using namespace mecwave;

namespace {

Scenario scenario_with(int num_md) {
  ScenarioParams p;
  p.num_md = num_md;
  return build_scenario(p, 1);
}

void BM_EvaluateSolution(benchmark::State& state) {
  const Scenario sc = scenario_with(static_cast<int>(state.range(0)));
  const Bounds b = make_bounds(sc);
  Rng rng{2};
  const Solution s = decode(init_wave(b, rng, 1), b);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_solution(sc, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateSolution)->RangeMultiplier(2)->Range(10, 160)->Complexity();

void BM_DecodeAndEvaluate(benchmark::State& state) {
  const Scenario sc = scenario_with(20);
  const Bounds b = make_bounds(sc);
  Rng rng{3};
  const Wave w = init_wave(b, rng, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_solution(sc, decode(w, b)));
}
BENCHMARK(BM_DecodeAndEvaluate);

void BM_RefractWave(benchmark::State& state) {
  const Scenario sc = scenario_with(20);
  const Bounds b = make_bounds(sc);
  Rng rng{4};
  const Wave best = init_wave(b, rng, 1);
  Wave w = init_wave(b, rng, 1);
  for (auto _ : state) {
    refract_wave(w, best, b, rng);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_RefractWave);

void BM_PopulationDiversity(benchmark::State& state) {
  const Scenario sc = scenario_with(20);
  const Bounds b = make_bounds(sc);
  Rng rng{5};
  std::vector<Wave> pop;
  for (int m = 0; m < 20; ++m) pop.push_back(init_wave(b, rng, 1));
  for (auto _ : state) benchmark::DoNotOptimize(population_diversity(pop, b));
}
BENCHMARK(BM_PopulationDiversity);

void BM_AgwwoIterations(benchmark::State& state) {
  const Scenario sc = scenario_with(20);
  OptimizerConfig cfg;
  cfg.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_agwwo(sc, cfg, 7));
}
BENCHMARK(BM_AgwwoIterations)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
