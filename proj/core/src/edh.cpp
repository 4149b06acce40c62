#include "planbench/edh.hpp"

#include <fstream>
#include <stdexcept>

#include "planbench/scene.hpp"

namespace planbench {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json trajectory_to_json(const Trajectory& t) {
  ordered_json events = ordered_json::array();
  for (const TrajEvent& ev : t.events) {
    ordered_json e;
    e["action"] = std::string(to_string(ev.kind));
    if (ev.target) e["target"] = *ev.target;
    events.push_back(e);
  }
  ordered_json j;
  j["events"] = events;
  return j;
}

Trajectory trajectory_from_json(const json& j) {
  Trajectory t;
  for (const json& e : j["events"]) {
    TrajEvent ev;
    auto kind = low_level_from_string(e["action"].get<std::string>());
    if (!kind)
      throw std::runtime_error("trajectory: unknown action " +
                               e["action"].get<std::string>());
    ev.kind = *kind;
    if (e.contains("target")) ev.target = e["target"].get<std::string>();
    t.events.push_back(std::move(ev));
  }
  return t;
}

ordered_json task_to_json(const TaskSpec& task) {
  ordered_json j;
  j["family"] = std::string(to_string(task.family));
  if (task.needs_n()) j["n"] = task.n;
  if (task.needs_x()) j["x"] = task.x;
  if (task.needs_y()) j["y"] = task.y;
  if (!task.location_hints.empty()) {
    ordered_json hints = ordered_json::array();
    for (const auto& [obj, container] : task.location_hints)
      hints.push_back(ordered_json::array({obj, container}));
    j["location_hints"] = hints;
  }
  return j;
}

TaskSpec task_from_json(const json& j) {
  TaskSpec t;
  auto f = family_from_string(j["family"].get<std::string>());
  if (!f) throw std::runtime_error("task: unknown family");
  t.family = *f;
  t.n = j.value("n", 0);
  t.x = j.value("x", "");
  t.y = j.value("y", "");
  if (j.contains("location_hints"))
    for (const json& h : j["location_hints"])
      t.location_hints.push_back({h[0].get<std::string>(),
                                  h[1].get<std::string>()});
  return t;
}

ordered_json goal_to_json(const GoalCondition& g) {
  ordered_json j;
  j["kind"] = g.kind == GoalCondition::Kind::ForAll ? "for_all" : "exists";
  if (g.kind == GoalCondition::Kind::ExistsK) j["count"] = g.count;
  j["subject"] = g.subject;
  if (g.include_derived) j["include_derived"] = true;
  if (g.sliced) j["sliced"] = *g.sliced;
  if (g.cooked) j["cooked"] = *g.cooked;
  if (g.cook_method) j["cook_method"] = std::string(to_string(*g.cook_method));
  if (g.clean) j["clean"] = *g.clean;
  if (g.toggled) j["toggled"] = *g.toggled;
  if (g.open) j["open"] = *g.open;
  if (g.fill) j["fill"] = std::string(to_string(*g.fill));
  if (g.in_type) j["in"] = *g.in_type;
  if (g.in_one_common) j["in_one_common"] = true;
  return j;
}

GoalCondition goal_from_json(const json& j) {
  GoalCondition g;
  g.kind = j["kind"] == "for_all" ? GoalCondition::Kind::ForAll
                                  : GoalCondition::Kind::ExistsK;
  g.count = j.value("count", 1);
  g.subject = j["subject"].get<std::string>();
  g.include_derived = j.value("include_derived", false);
  if (j.contains("sliced")) g.sliced = j["sliced"].get<bool>();
  if (j.contains("cooked")) g.cooked = j["cooked"].get<bool>();
  if (j.contains("cook_method"))
    g.cook_method = *cook_method_from_string(j["cook_method"].get<std::string>());
  if (j.contains("clean")) g.clean = j["clean"].get<bool>();
  if (j.contains("toggled")) g.toggled = j["toggled"].get<bool>();
  if (j.contains("open")) g.open = j["open"].get<bool>();
  if (j.contains("fill")) g.fill = *fill_from_string(j["fill"].get<std::string>());
  if (j.contains("in")) g.in_type = j["in"].get<std::string>();
  g.in_one_common = j.value("in_one_common", false);
  return g;
}

ordered_json edh_to_json(const EDHInstance& inst) {
  ordered_json j;
  j["id"] = inst.id;
  j["task"] = task_to_json(inst.task);
  j["dialog"] = inst.dialog;
  j["initial_world"] = world_to_json(inst.initial_world);
  j["history"] = trajectory_to_json(inst.history);
  j["reference_plan"] = format_plan(inst.reference_plan);
  j["reference_plan_ids"] = format_plan(inst.reference_plan_ids);
  ordered_json goals = ordered_json::array();
  for (const GoalCondition& g : inst.goals) goals.push_back(goal_to_json(g));
  j["goals"] = goals;
  return j;
}

EDHInstance edh_from_json(const json& j) {
  EDHInstance inst;
  inst.id = j["id"].get<std::string>();
  inst.task = task_from_json(j["task"]);
  inst.dialog = j["dialog"].get<std::vector<std::string>>();
  inst.initial_world = world_from_json(j["initial_world"]);
  inst.history = trajectory_from_json(j["history"]);
  inst.reference_plan = parse_plan(j["reference_plan"].get<std::string>());
  inst.reference_plan_ids =
      parse_plan(j["reference_plan_ids"].get<std::string>());
  for (const json& g : j["goals"]) inst.goals.push_back(goal_from_json(g));
  return inst;
}

EDHInstance load_edh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edh file: " + path);
  json j;
  in >> j;
  return edh_from_json(j);
}

}  // namespace planbench
