#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "planbench/plan.hpp"
#include "planbench/tasks.hpp"
#include "planbench/world.hpp"

namespace planbench {

// One benchmark instance: resume a partially completed session and finish
// the remaining state changes.
struct EDHInstance {
  std::string id;
  WorldState initial_world;
  std::vector<std::string> dialog;
  Trajectory history;
  Plan reference_plan;      // type-level references
  Plan reference_plan_ids;  // exact instance ids
  std::vector<GoalCondition> goals;
  TaskSpec task;

  auto operator<=>(const EDHInstance&) const = default;
};

nlohmann::ordered_json edh_to_json(const EDHInstance& instance);
EDHInstance edh_from_json(const nlohmann::json& j);
EDHInstance load_edh_file(const std::string& path);

nlohmann::ordered_json trajectory_to_json(const Trajectory& t);
Trajectory trajectory_from_json(const nlohmann::json& j);

nlohmann::ordered_json task_to_json(const TaskSpec& task);
TaskSpec task_from_json(const nlohmann::json& j);

nlohmann::ordered_json goal_to_json(const GoalCondition& g);
GoalCondition goal_from_json(const nlohmann::json& j);

}  // namespace planbench
