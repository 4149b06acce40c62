#include <doctest.h>

#include "planbench/scene.hpp"
#include "planbench/tasks.hpp"

using namespace planbench;
using nlohmann::json;

namespace {

WorldState kitchen() {
  return build_world(json::parse(R"({
    "grid": {"width": 8, "height": 4, "blocked": []},
    "agent_cell": [0, 0],
    "objects": [
      {"type": "Mug", "ordinal": 1, "cell": [1, 0], "state": {"dirty": true}},
      {"type": "CoffeeMachine", "ordinal": 1, "cell": [2, 0]},
      {"type": "Plant", "ordinal": 1, "cell": [3, 0]},
      {"type": "Sink", "ordinal": 1, "cell": [4, 0]},
      {"type": "Fork", "ordinal": 1, "cell": [5, 0]},
      {"type": "Fork", "ordinal": 2, "cell": [6, 0]},
      {"type": "Fork", "ordinal": 3, "cell": [7, 0]}
    ]
  })"));
}

bool check_all(const WorldState& w, const std::vector<GoalCondition>& goals) {
  for (const GoalCondition& g : goals)
    if (!check_predicate(w, g)) return false;
  return true;
}

}  // namespace

TEST_CASE("coffee goals require a clean coffee-filled mug") {
  WorldState w = kitchen();
  TaskSpec task{.family = TaskFamily::Coffee};
  auto goals = goal_conditions(task, w);
  CHECK_FALSE(check_all(w, goals));

  WorldState done = w;
  ObjectInstance* mug = done.find("Mug_1");
  mug->state.is_dirty = false;
  mug->state.fill = Fill::Coffee;
  CHECK(check_all(done, goals));

  // a dirty coffee-filled mug is not enough
  WorldState dirty = w;
  dirty.find("Mug_1")->state.fill = Fill::Coffee;
  CHECK_FALSE(check_all(dirty, goals));
}

TEST_CASE("put-all goals quantify over every instance of the type") {
  WorldState w = kitchen();
  TaskSpec task{.family = TaskFamily::PutAllXOnY, .x = "Fork", .y = "Sink"};
  auto goals = goal_conditions(task, w);
  REQUIRE(goals.size() == 1);
  CHECK(goals[0].kind == GoalCondition::Kind::ForAll);
  CHECK(goals[0].subject == "Fork");
  CHECK(goals[0].in_type == "Sink");
  CHECK_FALSE(check_all(w, goals));

  WorldState two = w;
  for (const char* id : {"Fork_1", "Fork_2"}) {
    two.find(id)->state.contained_in = "Sink_1";
    insert_content_sorted(two.find("Sink_1")->state.contents, id);
  }
  CHECK_FALSE(check_all(two, goals));
  WorldState all = two;
  all.find("Fork_3")->state.contained_in = "Sink_1";
  insert_content_sorted(all.find("Sink_1")->state.contents, "Fork_3");
  CHECK(check_all(all, goals));
}

TEST_CASE("water-plant goal checks the plant's fill state") {
  WorldState w = kitchen();
  TaskSpec task{.family = TaskFamily::WaterPlant};
  auto goals = goal_conditions(task, w);
  CHECK_FALSE(check_all(w, goals));
  WorldState watered = w;
  watered.find("Plant_1")->state.fill = Fill::Water;
  CHECK(check_all(watered, goals));
}

TEST_CASE("goal_conditions rejects worlds missing a required type") {
  WorldState w = kitchen();
  TaskSpec task{.family = TaskFamily::NSlicesOfXInY,
                .n = 2,
                .x = "Tomato",
                .y = "Bowl"};
  CHECK_THROWS_AS(goal_conditions(task, w), std::runtime_error);
}

TEST_CASE("task parameter requirements per family") {
  CHECK_FALSE(TaskSpec{.family = TaskFamily::Coffee}.needs_x());
  CHECK(TaskSpec{.family = TaskFamily::CleanAllX}.needs_x());
  CHECK_FALSE(TaskSpec{.family = TaskFamily::CleanAllX}.needs_y());
  TaskSpec slices{.family = TaskFamily::NSlicesOfXInY};
  CHECK(slices.needs_n());
  CHECK(slices.needs_x());
  CHECK(slices.needs_y());
}

TEST_CASE("family names round trip") {
  for (TaskFamily f : kAllFamilies) {
    auto back = family_from_string(to_string(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK_FALSE(family_from_string("Juggling").has_value());
}
