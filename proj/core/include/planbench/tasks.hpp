#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planbench/world.hpp"

namespace planbench {

enum class TaskFamily {
  Coffee,
  WaterPlant,
  PlateOfToast,
  CleanAllX,
  PutAllXOnY,
  PutAllXInOneY,
  NSlicesOfXInY,
  NCookedSlicesOfXInY,
  BoilX,
  Salad,
  Sandwich,
  Breakfast,
};

inline constexpr std::array<TaskFamily, 12> kAllFamilies = {
    TaskFamily::Coffee,        TaskFamily::WaterPlant,
    TaskFamily::PlateOfToast,  TaskFamily::CleanAllX,
    TaskFamily::PutAllXOnY,    TaskFamily::PutAllXInOneY,
    TaskFamily::NSlicesOfXInY, TaskFamily::NCookedSlicesOfXInY,
    TaskFamily::BoilX,         TaskFamily::Salad,
    TaskFamily::Sandwich,      TaskFamily::Breakfast};

std::string_view to_string(TaskFamily f);
std::optional<TaskFamily> family_from_string(std::string_view s);

struct TaskSpec {
  TaskFamily family = TaskFamily::Coffee;
  int n = 0;                 // count param, when applicable
  std::string x;             // object type param
  std::string y;             // receptacle type param
  // (hidden object type, container type) hints from the dialog.
  std::vector<std::pair<std::string, std::string>> location_hints;

  auto operator<=>(const TaskSpec&) const = default;
  bool needs_n() const;
  bool needs_x() const;
  bool needs_y() const;
};

struct GoalCondition {
  enum class Kind { ExistsK, ForAll } kind = Kind::ExistsK;
  int count = 1;                    // ExistsK only
  std::string subject;              // type name
  bool include_derived = false;     // also match the sliced derivative
  std::optional<bool> sliced;
  std::optional<bool> cooked;
  std::optional<CookMethod> cook_method;
  std::optional<bool> clean;        // clean == !is_dirty
  std::optional<bool> toggled;
  std::optional<bool> open;
  std::optional<Fill> fill;
  std::optional<std::string> in_type;  // required direct container type
  bool in_one_common = false;          // all/k subjects share one container

  auto operator<=>(const GoalCondition&) const = default;
};

// Pure evaluation of one goal predicate against a world.
bool check_predicate(const WorldState& world, const GoalCondition& goal);

// Expands a task into its goal conditions against a concrete world.
// Throws when the world lacks an instance of a required type.
std::vector<GoalCondition> goal_conditions(const TaskSpec& task,
                                           const WorldState& world);

}  // namespace planbench
