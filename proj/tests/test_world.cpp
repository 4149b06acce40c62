#include <doctest.h>

#include <queue>
#include <random>

#include "planbench/scene.hpp"
#include "planbench/tasks.hpp"
#include "planbench/world.hpp"

using namespace planbench;
using nlohmann::json;

namespace {

json simple_scene() {
  return json::parse(R"({
    "grid": {"width": 6, "height": 6, "blocked": [[0,0],[5,0]]},
    "agent_cell": [2, 2],
    "objects": [
      {"type": "Fridge", "ordinal": 1, "cell": [0, 0]},
      {"type": "Mug", "ordinal": 1, "in": "Fridge_1"},
      {"type": "CounterTop", "ordinal": 1, "cell": [5, 0]},
      {"type": "Knife", "ordinal": 1, "in": "CounterTop_1"}
    ]
  })");
}

// Reference distances by plain BFS, for checking shortest_path lengths.
int bfs_distance_to_range(const WorldState& w, const std::string& target) {
  Cell goal = w.effective_cell(target);
  std::queue<Cell> q;
  std::map<Cell, int> dist;
  q.push(w.agent_cell);
  dist[w.agent_cell] = 0;
  while (!q.empty()) {
    Cell c = q.front();
    q.pop();
    if (manhattan(c, goal) <= w.nav.interaction_range) return dist[c];
    for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1},
                   Cell{c.x, c.y - 1}})
      if (w.nav.passable(n) && !dist.count(n)) {
        dist[n] = dist[c] + 1;
        q.push(n);
      }
  }
  return -1;
}

}  // namespace

TEST_CASE("build_world places contained objects inside closed receptacles") {
  WorldState w = build_world(simple_scene());
  const ObjectInstance* mug = w.find("Mug_1");
  REQUIRE(mug != nullptr);
  CHECK(mug->state.contained_in == "Fridge_1");
  CHECK_FALSE(w.find("Fridge_1")->state.is_open);
  CHECK(w.occluded("Mug_1"));
}

TEST_CASE("build_world rejects capacity overflow naming the receptacle") {
  json spec = json::parse(R"({
    "grid": {"width": 4, "height": 4, "blocked": [[0,0]]},
    "agent_cell": [2, 2],
    "objects": [
      {"type": "Sink", "ordinal": 1, "cell": [0, 0]},
      {"type": "Mug", "ordinal": 1, "in": "Sink_1"},
      {"type": "Cup", "ordinal": 1, "in": "Sink_1"},
      {"type": "Fork", "ordinal": 1, "in": "Sink_1"}
    ]
  })");
  CHECK_THROWS_WITH_AS(build_world(spec),
                       doctest::Contains("Sink_1"), std::runtime_error);
}

TEST_CASE("build_world is deterministic") {
  CHECK(build_world(simple_scene()) == build_world(simple_scene()));
}

TEST_CASE("world json round trip") {
  WorldState w = build_world(simple_scene());
  CHECK(world_from_json(world_to_json(w)) == w);
}

TEST_CASE("closest_instance picks the nearer instance, ordinal on ties") {
  json spec = json::parse(R"({
    "grid": {"width": 8, "height": 3, "blocked": []},
    "agent_cell": [0, 1],
    "objects": [
      {"type": "Mug", "ordinal": 1, "cell": [3, 1]},
      {"type": "Mug", "ordinal": 2, "cell": [6, 1]},
      {"type": "Plate", "ordinal": 1, "cell": [0, 0]},
      {"type": "Plate", "ordinal": 2, "cell": [0, 2]}
    ]
  })");
  WorldState w = build_world(spec);
  CHECK(closest_instance(w, "Mug") == "Mug_1");
  CHECK(closest_instance(w, "Plate") == "Plate_1");
  CHECK_FALSE(closest_instance(w, "Potato").has_value());
}

TEST_CASE("shortest_path reaches interaction range with minimal length") {
  json spec = json::parse(R"({
    "grid": {"width": 1, "height": 4, "blocked": []},
    "agent_cell": [0, 0],
    "objects": [{"type": "Mug", "ordinal": 1, "cell": [0, 3]}]
  })");
  WorldState w = build_world(spec);
  auto path = shortest_path(w, "Mug_1");
  REQUIRE(path.has_value());
  CHECK(path->size() == 2);
  CHECK(path->back() == Cell{0, 2});

  w.agent_cell = {0, 2};
  auto close = shortest_path(w, "Mug_1");
  REQUIRE(close.has_value());
  CHECK(close->empty());
}

TEST_CASE("shortest_path returns nothing for enclosed targets") {
  json spec = json::parse(R"({
    "grid": {"width": 5, "height": 5,
             "blocked": [[3,2],[3,3],[3,4],[4,2]]},
    "agent_cell": [0, 0],
    "objects": [{"type": "Mug", "ordinal": 1, "cell": [4, 4]}]
  })");
  WorldState w = build_world(spec);
  CHECK_FALSE(shortest_path(w, "Mug_1").has_value());
}

TEST_CASE("shortest_path length matches exhaustive BFS on random grids") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int width = 3 + static_cast<int>(rng() % 6);
    int height = 3 + static_cast<int>(rng() % 6);
    json spec;
    spec["grid"]["width"] = width;
    spec["grid"]["height"] = height;
    spec["grid"]["blocked"] = json::array();
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        if (rng() % 4 == 0 && !(x <= 1 && y <= 1))
          spec["grid"]["blocked"].push_back({x, y});
    spec["agent_cell"] = {0, 0};
    spec["objects"] = json::array();
    spec["objects"].push_back(
        {{"type", "Mug"}, {"ordinal", 1}, {"cell", {width - 1, height - 1}}});
    WorldState w = build_world(spec);
    auto path = shortest_path(w, "Mug_1");
    int expect = bfs_distance_to_range(w, "Mug_1");
    if (expect < 0)
      CHECK_FALSE(path.has_value());
    else {
      REQUIRE(path.has_value());
      CHECK(static_cast<int>(path->size()) == expect);
    }
  }
}

TEST_CASE("apply_interaction enforces prerequisites") {
  json spec = json::parse(R"({
    "grid": {"width": 5, "height": 2, "blocked": [[0,0]]},
    "agent_cell": [0, 1],
    "objects": [
      {"type": "Microwave", "ordinal": 1, "cell": [0, 0],
       "state": {"open": true}},
      {"type": "Mug", "ordinal": 1, "cell": [1, 1]},
      {"type": "Fork", "ordinal": 1, "cell": [1, 0]}
    ]
  })");
  WorldState w = build_world(spec);

  auto [w1, r1] = apply_interaction(w, Action::ToggleOn, "Microwave_1");
  CHECK_FALSE(r1.success);
  CHECK(r1.failure_reason == FailureReason::PrerequisiteMissing);
  CHECK(w1 == w);

  auto [w2, r2] = apply_interaction(w, Action::Pickup, "Mug_1");
  REQUIRE(r2.success);
  w2.agent_cell = {1, 1};
  auto [w3, r3] = apply_interaction(w2, Action::Pickup, "Fork_1");
  CHECK_FALSE(r3.success);
  CHECK(r3.failure_reason == FailureReason::PrerequisiteMissing);
  CHECK(w3 == w2);
}

TEST_CASE("slicing replaces the target with sliced instances") {
  json spec = json::parse(R"({
    "grid": {"width": 4, "height": 2, "blocked": []},
    "agent_cell": [0, 1],
    "objects": [
      {"type": "Knife", "ordinal": 1, "cell": [0, 0]},
      {"type": "Potato", "ordinal": 1, "cell": [1, 1]}
    ]
  })");
  WorldState w = build_world(spec);
  auto [w1, r1] = apply_interaction(w, Action::Pickup, "Knife_1");
  REQUIRE(r1.success);
  auto [w2, r2] = apply_interaction(w1, Action::Slice, "Potato_1");
  REQUIRE(r2.success);
  CHECK(w2.find("Potato_1") == nullptr);
  for (int i = 1; i <= 4; ++i) {
    const ObjectInstance* s =
        w2.find("PotatoSliced_" + std::to_string(i));
    REQUIRE(s != nullptr);
    CHECK(s->state.is_sliced);
  }
}

TEST_CASE("failed interactions are strict no-ops") {
  WorldState w = build_world(simple_scene());
  std::mt19937_64 rng(5);
  std::vector<std::string> ids;
  for (const auto& [id, obj] : w.instances) ids.push_back(id);
  for (int i = 0; i < 500; ++i) {
    Action a = kInteractionActions[rng() % kInteractionActions.size()];
    const std::string& id = ids[rng() % ids.size()];
    auto [next, outcome] = apply_interaction(w, a, id);
    if (!outcome.success)
      CHECK(next == w);
    else
      w = next;
  }
}

TEST_CASE("visible_objects hides contents of closed receptacles") {
  WorldState w = build_world(simple_scene());
  auto seen = [](const Observation& obs, const std::string& id) {
    for (const ObsEntry& e : obs)
      if (e.id == id) return true;
    return false;
  };
  Observation before = visible_objects(w);
  CHECK_FALSE(seen(before, "Mug_1"));
  CHECK(seen(before, "Fridge_1"));

  w.agent_cell = {1, 0};
  auto [w2, r2] = apply_interaction(w, Action::Open, "Fridge_1");
  REQUIRE(r2.success);
  CHECK(seen(visible_objects(w2), "Mug_1"));
}

TEST_CASE("check_predicate counts cooked slices in receptacles") {
  json spec = json::parse(R"({
    "grid": {"width": 4, "height": 2, "blocked": []},
    "agent_cell": [0, 1],
    "objects": [
      {"type": "Plate", "ordinal": 1, "cell": [0, 0]},
      {"type": "PotatoSliced", "ordinal": 1, "cell": [1, 0],
       "state": {"sliced": true, "cooked": true, "cook_method": "microwave"}},
      {"type": "PotatoSliced", "ordinal": 2, "cell": [2, 0],
       "state": {"sliced": true, "cooked": true, "cook_method": "microwave"}}
    ]
  })");
  WorldState w = build_world(spec);
  GoalCondition g;
  g.kind = GoalCondition::Kind::ExistsK;
  g.count = 2;
  g.subject = "PotatoSliced";
  g.cooked = true;
  g.in_type = "Plate";
  CHECK_FALSE(check_predicate(w, g));

  w.agent_cell = {1, 1};
  auto [w1, r1] = apply_interaction(w, Action::Pickup, "PotatoSliced_1");
  REQUIRE(r1.success);
  w1.agent_cell = {0, 1};
  auto [w2, r2] = apply_interaction(w1, Action::Place, "Plate_1");
  REQUIRE(r2.success);
  w2.agent_cell = {2, 1};
  auto [w3, r3] = apply_interaction(w2, Action::Pickup, "PotatoSliced_2");
  REQUIRE(r3.success);
  w3.agent_cell = {0, 1};
  auto [w4, r4] = apply_interaction(w3, Action::Place, "Plate_1");
  REQUIRE(r4.success);
  CHECK(check_predicate(w4, g));

  GoalCondition vacuous;
  vacuous.kind = GoalCondition::Kind::ExistsK;
  vacuous.count = 0;
  vacuous.subject = "Potato";
  CHECK(check_predicate(w, vacuous));
}
