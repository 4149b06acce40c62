#include <benchmark/benchmark.h>

#include "planbench/generator.hpp"
#include "planbench/harness.hpp"
#include "planbench/metrics.hpp"

using namespace planbench;

namespace {

Plan synthetic_plan(std::uint64_t seed, int length) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> types = {"Mug", "Plate", "Bread", "Knife"};
  Plan p;
  for (int i = 0; i < length; ++i) {
    Action a = kInteractionActions[rng() % kInteractionActions.size()];
    p.steps.push_back({a, ObjectRef::by_type(types[rng() % types.size()])});
  }
  p.steps.push_back(PlanStep::stop());
  return p;
}

void BM_EditDistance(benchmark::State& state) {
  Plan a = synthetic_plan(1, static_cast<int>(state.range(0)));
  Plan b = synthetic_plan(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(edit_distance(a, b));
}
BENCHMARK(BM_EditDistance)->Arg(10)->Arg(50)->Arg(100);

void BM_ShortestPath(benchmark::State& state) {
  GeneratedScene scene = generate_scene(11, SceneProfile::Seen, "bench");
  for (auto _ : state)
    benchmark::DoNotOptimize(shortest_path(scene.world, "Fridge_1"));
}
BENCHMARK(BM_ShortestPath);

void BM_PlanDemonstration(benchmark::State& state) {
  GeneratedScene scene = generate_scene(11, SceneProfile::Seen, "bench");
  for (auto _ : state)
    benchmark::DoNotOptimize(plan_demonstration(scene.world, scene.task));
}
BENCHMARK(BM_PlanDemonstration);

void BM_OracleEpisode(benchmark::State& state) {
  GeneratedScene scene = generate_scene(11, SceneProfile::Seen, "bench");
  SlicedDemo sliced = slice_demo(scene, 11);
  ExecutionConfig config;
  config.mode = ExecutionMode::Assisted;
  for (auto _ : state) {
    OraclePredictor oracle;
    benchmark::DoNotOptimize(
        run_episode(sliced.instances.front(), oracle, config));
  }
}
BENCHMARK(BM_OracleEpisode);

}  // namespace

BENCHMARK_MAIN();
