#include <doctest.h>

#include <filesystem>

#include "planbench/executor.hpp"
#include "planbench/generator.hpp"
#include "planbench/predictor.hpp"
#include "planbench/scene.hpp"

using namespace planbench;
namespace fs = std::filesystem;

TEST_CASE("scene generation is deterministic in seed and profile") {
  for (auto profile :
       {SceneProfile::Seen, SceneProfile::Unseen, SceneProfile::Ambiguity}) {
    GeneratedScene a = generate_scene(42, profile, "x");
    GeneratedScene b = generate_scene(42, profile, "x");
    CHECK(a.world == b.world);
    CHECK(a.task == b.task);
    GeneratedScene c = generate_scene(43, profile, "x");
    CHECK(a.world != c.world);
  }
}

TEST_CASE("ambiguity scenes hide a closer duplicate of the task vessel") {
  GeneratedScene scene = generate_scene(5, SceneProfile::Ambiguity, "amb");
  std::string vessel = scene.task.family == TaskFamily::Coffee ? "Mug" : "Cup";
  // two instances, the closest of which sits occluded in the fridge
  int count = 0;
  for (const auto& [id, obj] : scene.world.instances)
    if (obj.type == vessel) ++count;
  CHECK(count == 2);
  auto closest = closest_instance(scene.world, vessel);
  REQUIRE(closest.has_value());
  CHECK(scene.world.occluded(*closest));
}

TEST_CASE("demonstrations replay to the task goals") {
  for (std::uint64_t seed : {201, 202, 203, 204, 205}) {
    GeneratedScene scene = generate_scene(seed, SceneProfile::Seen, "d");
    Demonstration demo = plan_demonstration(scene.world, scene.task);
    for (const GoalCondition& g : goal_conditions(scene.task, scene.world))
      CHECK(check_predicate(demo.final_world, g));
    CHECK(demo.trajectory.events.back().kind == LowLevelKind::Stop);
    REQUIRE(!demo.subtask_boundaries.empty());
    CHECK(demo.plan_ids.steps.back() == PlanStep::stop());
  }
}

TEST_CASE("hidden objects force an Open before their Pickup") {
  WorldState w = build_world(nlohmann::json::parse(R"({
    "grid": {"width": 8, "height": 6, "blocked": [[0,0],[4,0],[6,0]]},
    "agent_cell": [2, 2],
    "objects": [
      {"type": "Fridge", "ordinal": 1, "cell": [0, 0]},
      {"type": "Mug", "ordinal": 1, "in": "Fridge_1"},
      {"type": "CoffeeMachine", "ordinal": 1, "cell": [4, 0]},
      {"type": "Sink", "ordinal": 1, "cell": [6, 0]},
      {"type": "Faucet", "ordinal": 1, "cell": [7, 0]},
      {"type": "CounterTop", "ordinal": 1, "cell": [2, 5]}
    ]
  })"));
  TaskSpec task{.family = TaskFamily::Coffee};
  Demonstration demo = plan_demonstration(w, task);
  int open_at = -1, pickup_at = -1;
  for (std::size_t i = 0; i < demo.trajectory.events.size(); ++i) {
    const TrajEvent& ev = demo.trajectory.events[i];
    if (ev.kind == LowLevelKind::Open && ev.target == "Fridge_1" &&
        open_at < 0)
      open_at = static_cast<int>(i);
    if (ev.kind == LowLevelKind::Pickup && ev.target == "Mug_1")
      pickup_at = static_cast<int>(i);
  }
  REQUIRE(open_at >= 0);
  REQUIRE(pickup_at >= 0);
  CHECK(open_at < pickup_at);
}

TEST_CASE("slicing a demo yields instances whose replay reaches the goals") {
  GeneratedScene scene = generate_scene(77, SceneProfile::Seen, "s77");
  SlicedDemo sliced = slice_demo(scene, 77);
  REQUIRE(!sliced.instances.empty());
  for (const EDHInstance& inst : sliced.instances) {
    CHECK(!inst.goals.empty());
    CHECK(inst.reference_plan.steps.back() == PlanStep::stop());
    CorefOraclePredictor oracle;
    EpisodeOutcome out =
        run_episode(inst, oracle, {.mode = ExecutionMode::Assisted});
    EdhEval eval = evaluate_edh(out.final_world, inst);
    CHECK(eval.success);
  }
  // the first instance starts from the scene itself
  CHECK(sliced.instances.front().initial_world == scene.world);
  // later instances carry the consumed prefix as history
  if (sliced.instances.size() > 1)
    CHECK(!sliced.instances.back().history.events.empty());
}

TEST_CASE("dataset writing is deterministic and loadable") {
  fs::path dir = fs::temp_directory_path() / "planbench_gen_test";
  fs::remove_all(dir);
  GenConfig cfg{.seed = 7, .train = 3, .eval_per_split = 2, .ambiguity = 2};
  write_dataset(dir, cfg);
  for (const std::string& split : dataset_splits()) {
    std::vector<EDHInstance> instances = load_split(dir, split);
    CHECK(!instances.empty());
  }
  std::vector<EDHInstance> before = load_split(dir, "train");

  fs::path dir2 = fs::temp_directory_path() / "planbench_gen_test2";
  fs::remove_all(dir2);
  write_dataset(dir2, cfg);
  CHECK(load_split(dir2, "train") == before);

  // instance files round trip through json untouched
  EDHInstance inst = before.front();
  CHECK(edh_from_json(edh_to_json(inst)) == inst);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("seen and unseen scenes use different kitchen footprints") {
  GeneratedScene seen = generate_scene(9, SceneProfile::Seen, "a");
  GeneratedScene unseen = generate_scene(9, SceneProfile::Unseen, "b");
  bool differs = seen.world.nav.width != unseen.world.nav.width ||
                 seen.world.nav.height != unseen.world.nav.height ||
                 seen.world.nav.blocked != unseen.world.nav.blocked;
  CHECK(differs);
}
