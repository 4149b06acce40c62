#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "planbench/edh.hpp"
#include "planbench/metrics.hpp"
#include "planbench/plan.hpp"
#include "planbench/world.hpp"

namespace planbench {

enum class ExecutionMode { Direct, Assisted };
std::string_view to_string(ExecutionMode m);
std::optional<ExecutionMode> mode_from_string(std::string_view s);

struct ExecutionConfig {
  ExecutionMode mode = ExecutionMode::Direct;
  int failure_limit = 30;
  int step_limit = 100;
};

struct StepRecord {
  PlanStep step;
  std::optional<std::string> resolved;
  int nav_path_len = 0;
  std::vector<std::pair<Action, std::string>> assist_subactions;
  InteractionOutcome outcome;
  bool skipped_already_complete = false;
};

struct ExecutionTrace {
  std::vector<StepRecord> records;
  Termination termination = Termination::StopPredicted;
  int failures = 0;
  int steps = 0;
};

nlohmann::ordered_json trace_to_json(const ExecutionTrace& trace);

std::optional<std::string> resolve_target(const WorldState& world,
                                          const PlanStep& step);

// Mutable per-episode execution state beyond the world itself.
struct ExecutorMemory {
  // Most recently held instance, for the Place "already complete" check.
  std::optional<std::string> last_held;
};

std::pair<WorldState, StepRecord> execute_step(const WorldState& world,
                                               const PlanStep& step,
                                               ExecutionMode mode,
                                               ExecutorMemory& memory);

class Predictor;  // see predictor.hpp

struct EpisodeOutcome {
  WorldState final_world;
  ExecutionTrace trace;
  Plan attempted_plan;  // predicted non-Stop steps in order, Stop appended
};

EpisodeOutcome run_episode(const EDHInstance& instance, Predictor& predictor,
                           const ExecutionConfig& config);

}  // namespace planbench
