#include "planbench/tasks.hpp"

#include <algorithm>
#include <stdexcept>

namespace planbench {

std::string_view to_string(TaskFamily f) {
  switch (f) {
    case TaskFamily::Coffee: return "Coffee";
    case TaskFamily::WaterPlant: return "WaterPlant";
    case TaskFamily::PlateOfToast: return "PlateOfToast";
    case TaskFamily::CleanAllX: return "CleanAllX";
    case TaskFamily::PutAllXOnY: return "PutAllXOnY";
    case TaskFamily::PutAllXInOneY: return "PutAllXInOneY";
    case TaskFamily::NSlicesOfXInY: return "NSlicesOfXInY";
    case TaskFamily::NCookedSlicesOfXInY: return "NCookedSlicesOfXInY";
    case TaskFamily::BoilX: return "BoilX";
    case TaskFamily::Salad: return "Salad";
    case TaskFamily::Sandwich: return "Sandwich";
    case TaskFamily::Breakfast: return "Breakfast";
  }
  return "?";
}

std::optional<TaskFamily> family_from_string(std::string_view s) {
  for (TaskFamily f : kAllFamilies)
    if (s == to_string(f)) return f;
  return std::nullopt;
}

bool TaskSpec::needs_n() const {
  return family == TaskFamily::NSlicesOfXInY ||
         family == TaskFamily::NCookedSlicesOfXInY;
}

bool TaskSpec::needs_x() const {
  switch (family) {
    case TaskFamily::CleanAllX:
    case TaskFamily::PutAllXOnY:
    case TaskFamily::PutAllXInOneY:
    case TaskFamily::NSlicesOfXInY:
    case TaskFamily::NCookedSlicesOfXInY:
    case TaskFamily::BoilX:
      return true;
    default:
      return false;
  }
}

bool TaskSpec::needs_y() const {
  switch (family) {
    case TaskFamily::PutAllXOnY:
    case TaskFamily::PutAllXInOneY:
    case TaskFamily::NSlicesOfXInY:
    case TaskFamily::NCookedSlicesOfXInY:
      return true;
    default:
      return false;
  }
}

namespace {

bool state_matches(const ObjectInstance& obj, const GoalCondition& g) {
  const ObjectState& s = obj.state;
  if (g.sliced && s.is_sliced != *g.sliced) return false;
  if (g.cooked && s.is_cooked != *g.cooked) return false;
  if (g.cook_method && s.cook_method != *g.cook_method) return false;
  if (g.clean && s.is_dirty == *g.clean) return false;
  if (g.toggled && s.is_toggled_on != *g.toggled) return false;
  if (g.open && s.is_open != *g.open) return false;
  if (g.fill && s.fill != *g.fill) return false;
  return true;
}

bool subject_matches(const ObjectInstance& obj, const GoalCondition& g) {
  if (obj.type == g.subject) return true;
  if (g.include_derived) {
    const ObjectType& t = Catalog::instance().at(g.subject);
    if (!t.sliced_into.empty() && obj.type == t.sliced_into) return true;
  }
  return false;
}

bool containment_matches(const WorldState& world, const ObjectInstance& obj,
                         const std::string& container_type) {
  if (!obj.state.contained_in) return false;
  const ObjectInstance* c = world.find(*obj.state.contained_in);
  return c && c->type == container_type;
}

}  // namespace

bool check_predicate(const WorldState& world, const GoalCondition& g) {
  std::vector<const ObjectInstance*> subjects;
  for (const auto& [id, obj] : world.instances)
    if (subject_matches(obj, g)) subjects.push_back(&obj);

  auto satisfies = [&](const ObjectInstance& obj) {
    if (!state_matches(obj, g)) return false;
    if (g.in_type && !g.in_one_common &&
        !containment_matches(world, obj, *g.in_type))
      return false;
    return true;
  };

  if (g.in_one_common && g.in_type) {
    // Count satisfying subjects per container instance of the required type.
    std::map<std::string, int> per_container;
    int needed = g.kind == GoalCondition::Kind::ForAll
                     ? static_cast<int>(subjects.size())
                     : g.count;
    for (const ObjectInstance* obj : subjects) {
      if (!state_matches(*obj, g)) continue;
      if (containment_matches(world, *obj, *g.in_type))
        per_container[*obj->state.contained_in]++;
    }
    if (needed == 0) return true;
    for (const auto& [cid, n] : per_container)
      if (n >= needed) return true;
    return false;
  }

  if (g.kind == GoalCondition::Kind::ForAll) {
    return std::all_of(subjects.begin(), subjects.end(),
                       [&](const ObjectInstance* o) { return satisfies(*o); });
  }
  int n = static_cast<int>(std::count_if(
      subjects.begin(), subjects.end(),
      [&](const ObjectInstance* o) { return satisfies(*o); }));
  return n >= g.count;
}

namespace {

void require_type(const WorldState& world, const std::string& type,
                  const TaskSpec& task) {
  for (const auto& [id, obj] : world.instances)
    if (obj.type == type) return;
  throw std::runtime_error(std::string("goal_conditions: task ") +
                           std::string(to_string(task.family)) +
                           " requires an instance of " + type);
}

GoalCondition exists(std::string subject, int count = 1) {
  GoalCondition g;
  g.kind = GoalCondition::Kind::ExistsK;
  g.count = count;
  g.subject = std::move(subject);
  return g;
}

std::vector<GoalCondition> expand(const TaskSpec& task,
                                  const WorldState& world) {
  std::vector<GoalCondition> goals;
  switch (task.family) {
    case TaskFamily::Coffee: {
      require_type(world, "Mug", task);
      GoalCondition g = exists("Mug");
      g.fill = Fill::Coffee;
      g.clean = true;
      goals.push_back(g);
      break;
    }
    case TaskFamily::WaterPlant: {
      require_type(world, "Plant", task);
      GoalCondition g = exists("Plant");
      g.fill = Fill::Water;
      goals.push_back(g);
      break;
    }
    case TaskFamily::PlateOfToast: {
      require_type(world, "Bread", task);
      require_type(world, "Plate", task);
      GoalCondition g = exists("BreadSliced");
      g.cooked = true;
      g.in_type = "Plate";
      goals.push_back(g);
      break;
    }
    case TaskFamily::CleanAllX: {
      require_type(world, task.x, task);
      GoalCondition g;
      g.kind = GoalCondition::Kind::ForAll;
      g.subject = task.x;
      g.clean = true;
      goals.push_back(g);
      break;
    }
    case TaskFamily::PutAllXOnY: {
      require_type(world, task.x, task);
      require_type(world, task.y, task);
      GoalCondition g;
      g.kind = GoalCondition::Kind::ForAll;
      g.subject = task.x;
      g.in_type = task.y;
      goals.push_back(g);
      break;
    }
    case TaskFamily::PutAllXInOneY: {
      require_type(world, task.x, task);
      require_type(world, task.y, task);
      GoalCondition g;
      g.kind = GoalCondition::Kind::ForAll;
      g.subject = task.x;
      g.in_type = task.y;
      g.in_one_common = true;
      goals.push_back(g);
      break;
    }
    case TaskFamily::NSlicesOfXInY: {
      require_type(world, task.x, task);
      require_type(world, task.y, task);
      const std::string sliced = Catalog::instance().at(task.x).sliced_into;
      GoalCondition g = exists(sliced, task.n);
      g.sliced = true;
      g.in_type = task.y;
      g.in_one_common = true;
      goals.push_back(g);
      break;
    }
    case TaskFamily::NCookedSlicesOfXInY: {
      require_type(world, task.x, task);
      require_type(world, task.y, task);
      const std::string sliced = Catalog::instance().at(task.x).sliced_into;
      GoalCondition g = exists(sliced, task.n);
      g.sliced = true;
      g.cooked = true;
      g.in_type = task.y;
      g.in_one_common = true;
      goals.push_back(g);
      break;
    }
    case TaskFamily::BoilX: {
      require_type(world, task.x, task);
      GoalCondition g = exists(task.x);
      g.include_derived = true;
      g.cooked = true;
      g.cook_method = CookMethod::Boil;
      goals.push_back(g);
      break;
    }
    case TaskFamily::Salad: {
      TaskSpec part = task;
      part.family = TaskFamily::NSlicesOfXInY;
      part.n = 1;
      part.x = "Tomato";
      part.y = "Plate";
      auto a = expand(part, world);
      part.family = TaskFamily::NCookedSlicesOfXInY;
      part.x = "Potato";
      auto b = expand(part, world);
      goals.insert(goals.end(), a.begin(), a.end());
      goals.insert(goals.end(), b.begin(), b.end());
      break;
    }
    case TaskFamily::Sandwich: {
      TaskSpec part = task;
      part.family = TaskFamily::NCookedSlicesOfXInY;
      part.n = 2;
      part.x = "Bread";
      part.y = "Plate";
      auto a = expand(part, world);
      part.family = TaskFamily::NSlicesOfXInY;
      part.n = 1;
      part.x = "Tomato";
      auto b = expand(part, world);
      goals.insert(goals.end(), a.begin(), a.end());
      goals.insert(goals.end(), b.begin(), b.end());
      break;
    }
    case TaskFamily::Breakfast: {
      TaskSpec part = task;
      part.family = TaskFamily::Coffee;
      auto a = expand(part, world);
      part.family = TaskFamily::PlateOfToast;
      auto b = expand(part, world);
      goals.insert(goals.end(), a.begin(), a.end());
      goals.insert(goals.end(), b.begin(), b.end());
      break;
    }
  }
  return goals;
}

}  // namespace

std::vector<GoalCondition> goal_conditions(const TaskSpec& task,
                                           const WorldState& world) {
  return expand(task, world);
}

}  // namespace planbench
