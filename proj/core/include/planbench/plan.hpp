#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planbench/types.hpp"

namespace planbench {

struct ObjectRef {
  enum class Kind { None, ByType, ById } kind = Kind::None;
  std::string name;  // type name or instance id

  static ObjectRef none() { return {}; }
  static ObjectRef by_type(std::string t) {
    return {Kind::ByType, std::move(t)};
  }
  static ObjectRef by_id(std::string id) { return {Kind::ById, std::move(id)}; }

  auto operator<=>(const ObjectRef&) const = default;
};

struct PlanStep {
  Action action = Action::Stop;
  ObjectRef object_ref;

  static PlanStep stop() { return {}; }
  auto operator<=>(const PlanStep&) const = default;
};

struct Plan {
  std::vector<PlanStep> steps;

  auto operator<=>(const Plan&) const = default;
  // Steps with the trailing Stop removed (for metric comparison).
  std::vector<PlanStep> without_stop() const;
};

struct TrajEvent {
  LowLevelKind kind = LowLevelKind::Stop;
  std::optional<std::string> target;  // instance id

  auto operator<=>(const TrajEvent&) const = default;
};

struct Trajectory {
  std::vector<TrajEvent> events;

  auto operator<=>(const Trajectory&) const = default;
};

enum class CompileMode { ByType, ById };

// Drops navigation events, keeps interaction events as plan steps, appends
// Stop. Throws when an interaction event lacks a target (names the index).
Plan compile_plan(const Trajectory& trajectory, CompileMode mode);

std::string format_plan(const Plan& plan);
Plan parse_plan(const std::string& text);  // throws with line numbers

std::string format_step(const PlanStep& step);

}  // namespace planbench
