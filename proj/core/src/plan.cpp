#include "planbench/plan.hpp"

#include <sstream>
#include <stdexcept>

#include "planbench/catalog.hpp"
#include "planbench/world.hpp"

namespace planbench {

std::vector<PlanStep> Plan::without_stop() const {
  std::vector<PlanStep> out = steps;
  while (!out.empty() && out.back().action == Action::Stop) out.pop_back();
  return out;
}

Plan compile_plan(const Trajectory& trajectory, CompileMode mode) {
  Plan plan;
  for (std::size_t i = 0; i < trajectory.events.size(); ++i) {
    const TrajEvent& ev = trajectory.events[i];
    if (!is_interaction(ev.kind)) continue;
    if (!ev.target)
      throw std::runtime_error("compile_plan: interaction event " +
                               std::to_string(i) + " has no target");
    PlanStep step;
    step.action = interaction_action(ev.kind);
    if (mode == CompileMode::ById) {
      step.object_ref = ObjectRef::by_id(*ev.target);
    } else {
      step.object_ref = ObjectRef::by_type(split_id(*ev.target).first);
    }
    plan.steps.push_back(std::move(step));
  }
  plan.steps.push_back(PlanStep::stop());
  return plan;
}

std::string format_step(const PlanStep& step) {
  if (step.action == Action::Stop) return "(Stop)";
  return "(" + std::string(to_string(step.action)) + ", " +
         step.object_ref.name + ")";
}

std::string format_plan(const Plan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (i) out += "\n";
    out += format_step(plan.steps[i]);
  }
  return out;
}

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw std::runtime_error("parse_plan: line " + std::to_string(line) + ": " +
                           what);
}

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Plan parse_plan(const std::string& text) {
  Plan plan;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_stop = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trimmed(raw);
    if (line.empty()) continue;
    if (saw_stop) parse_error(line_no, "step after (Stop)");
    if (line.front() != '(' || line.back() != ')')
      parse_error(line_no, "malformed tuple: " + line);
    std::string body = line.substr(1, line.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) {
      if (trimmed(body) != "Stop")
        parse_error(line_no, "malformed tuple: " + line);
      plan.steps.push_back(PlanStep::stop());
      saw_stop = true;
      continue;
    }
    std::string action_name = trimmed(body.substr(0, comma));
    std::string ref = trimmed(body.substr(comma + 1));
    auto action = action_from_string(action_name);
    if (!action || *action == Action::Stop)
      parse_error(line_no, "unknown action: " + action_name);
    if (ref.empty()) parse_error(line_no, "missing object reference");
    PlanStep step;
    step.action = *action;
    // Ids carry an ordinal suffix, type references do not.
    if (ref.find('_') != std::string::npos) {
      step.object_ref = ObjectRef::by_id(ref);
    } else {
      step.object_ref = ObjectRef::by_type(ref);
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace planbench
