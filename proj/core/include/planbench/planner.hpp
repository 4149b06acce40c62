#pragma once

#include <stdexcept>
#include <vector>

#include "planbench/plan.hpp"
#include "planbench/tasks.hpp"
#include "planbench/world.hpp"

namespace planbench {

struct PlannerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Demonstration {
  WorldState initial_world;
  Trajectory trajectory;  // low-level events, ends with Stop
  Plan plan_ids;          // ById compilation of the trajectory
  // Plan step counts after each completed subtask, in order.
  std::vector<std::size_t> subtask_boundaries;
  WorldState final_world;
};

// Deterministic macro decomposition of a task into an executable trajectory.
// Simulates every step, so a returned demonstration is guaranteed to reach
// the task's goal conditions. Throws PlannerError when the scene cannot
// support the task (missing objects, unreachable targets, no pot on the
// stove for a boil task).
Demonstration plan_demonstration(const WorldState& scene, const TaskSpec& task);

}  // namespace planbench
