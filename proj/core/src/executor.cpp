#include "planbench/executor.hpp"

#include <algorithm>

#include "planbench/dialog.hpp"
#include "planbench/predictor.hpp"

namespace planbench {

std::string_view to_string(ExecutionMode m) {
  return m == ExecutionMode::Direct ? "direct" : "assisted";
}

std::optional<ExecutionMode> mode_from_string(std::string_view s) {
  if (s == "direct") return ExecutionMode::Direct;
  if (s == "assisted") return ExecutionMode::Assisted;
  return std::nullopt;
}

std::optional<std::string> resolve_target(const WorldState& world,
                                          const PlanStep& step) {
  switch (step.object_ref.kind) {
    case ObjectRef::Kind::None:
      return std::nullopt;
    case ObjectRef::Kind::ById:
      return world.find(step.object_ref.name)
                 ? std::optional<std::string>(step.object_ref.name)
                 : std::nullopt;
    case ObjectRef::Kind::ByType:
      return closest_instance(world, step.object_ref.name);
  }
  return std::nullopt;
}

namespace {

// Navigate toward the target; true when the agent ends within range.
bool navigate(WorldState& world, const std::string& target_id, int* path_len) {
  auto path = shortest_path(world, target_id);
  if (!path) return false;
  if (path_len) *path_len += static_cast<int>(path->size());
  if (!path->empty()) world.agent_cell = path->back();
  return true;
}

std::optional<std::string> nearest_counter(const WorldState& world) {
  auto c = closest_instance(world, "CounterTop");
  if (c) return c;
  return closest_instance(world, "DiningTable");
}

// Closed openable ancestors of `id`, outermost first.
std::vector<std::string> closed_ancestors(const WorldState& world,
                                          const std::string& id) {
  std::vector<std::string> chain;
  const ObjectInstance* obj = world.find(id);
  while (obj && obj->state.contained_in) {
    const ObjectInstance* outer = world.find(*obj->state.contained_in);
    if (!outer) break;
    if (Catalog::instance().at(outer->type).openable && !outer->state.is_open)
      chain.push_back(outer->id);
    obj = outer;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool intended_effect_holds(const WorldState& world, const PlanStep& step,
                           const ExecutorMemory& memory) {
  const std::optional<std::string> resolved = resolve_target(world, step);
  const ObjectInstance* target =
      resolved ? world.find(*resolved) : nullptr;
  auto in_target = [&](const ObjectInstance& item) {
    if (!item.state.contained_in) return false;
    const ObjectInstance* c = world.find(*item.state.contained_in);
    if (!c) return false;
    if (step.object_ref.kind == ObjectRef::Kind::ById)
      return c->id == step.object_ref.name;
    return c->type == step.object_ref.name;
  };
  switch (step.action) {
    case Action::Pickup:
      return world.held && world.find(*world.held) &&
             (step.object_ref.kind == ObjectRef::Kind::ById
                  ? *world.held == step.object_ref.name
                  : world.find(*world.held)->type == step.object_ref.name);
    case Action::Place: {
      if (world.held) return false;
      if (!memory.last_held) return false;
      const ObjectInstance* item = world.find(*memory.last_held);
      return item && in_target(*item);
    }
    case Action::Open:
      return target && target->state.is_open;
    case Action::Close:
      return target && Catalog::instance().at(target->type).openable &&
             !target->state.is_open;
    case Action::ToggleOn:
      return target && target->state.is_toggled_on;
    case Action::ToggleOff:
      return target && Catalog::instance().at(target->type).toggleable &&
             !target->state.is_toggled_on;
    case Action::Slice: {
      std::string type = step.object_ref.kind == ObjectRef::Kind::ById
                             ? split_id(step.object_ref.name).first
                             : step.object_ref.name;
      const ObjectType* t = Catalog::instance().find(type);
      if (!t || t->sliced_into.empty()) return false;
      for (const auto& [id, obj] : world.instances)
        if (obj.type == t->sliced_into && obj.state.is_sliced) return true;
      return false;
    }
    case Action::Pour:
      return target && target->state.fill != Fill::None;
    case Action::Stop:
      return false;
  }
  return false;
}

// One navigated interaction used as an assistance sub-action.
struct Assist {
  WorldState& world;
  StepRecord& record;
  ExecutorMemory& memory;

  bool act(Action action, const std::string& target_id) {
    navigate(world, target_id, &record.nav_path_len);
    auto [next, outcome] = apply_interaction(world, action, target_id);
    record.assist_subactions.push_back({action, target_id});
    if (!outcome.success) return false;
    world = std::move(next);
    if (action == Action::Pickup) memory.last_held = target_id;
    return true;
  }
};

InteractionOutcome attempt(WorldState& world, Action action,
                           const std::string& target_id, int* nav_len) {
  if (!navigate(world, target_id, nav_len))
    return InteractionOutcome::fail(FailureReason::NotInRange);
  auto [next, outcome] = apply_interaction(world, action, target_id);
  if (outcome.success) world = std::move(next);
  return outcome;
}

}  // namespace

std::pair<WorldState, StepRecord> execute_step(const WorldState& world,
                                               const PlanStep& step,
                                               ExecutionMode mode,
                                               ExecutorMemory& memory) {
  StepRecord record;
  record.step = step;

  if (mode == ExecutionMode::Assisted &&
      intended_effect_holds(world, step, memory)) {
    record.skipped_already_complete = true;
    record.outcome = InteractionOutcome::ok();
    record.resolved = resolve_target(world, step);
    return {world, record};
  }

  std::optional<std::string> resolved = resolve_target(world, step);
  record.resolved = resolved;
  if (!resolved) {
    record.outcome = InteractionOutcome::fail(FailureReason::NoSuchObject);
    return {world, record};
  }

  WorldState w = world;
  InteractionOutcome direct =
      attempt(w, step.action, *resolved, &record.nav_path_len);
  if (direct.success || mode == ExecutionMode::Direct) {
    record.outcome = direct;
    if (direct.success && step.action == Action::Pickup)
      memory.last_held = *resolved;
    if (!direct.success) return {world, record};
    return {std::move(w), record};
  }

  // Assisted recovery. Sub-actions run against a scratch world; on final
  // failure the input world is returned unchanged.
  Assist assist{w, record, memory};
  const Catalog& cat = Catalog::instance();
  const std::string& target = *resolved;

  switch (step.action) {
    case Action::Pickup: {
      std::vector<std::string> opened;
      for (const std::string& anc : closed_ancestors(w, target)) {
        const ObjectInstance* a = w.find(anc);
        if (a->state.is_toggled_on && !assist.act(Action::ToggleOff, anc)) break;
        if (!assist.act(Action::Open, anc)) break;
        opened.push_back(anc);
      }
      record.outcome = attempt(w, Action::Pickup, target, &record.nav_path_len);
      if (record.outcome.success) memory.last_held = target;
      for (auto it = opened.rbegin(); it != opened.rend(); ++it)
        assist.act(Action::Close, *it);
      break;
    }
    case Action::Place: {
      if (!w.held) {
        record.outcome = direct;
        break;
      }
      std::string item = *w.held;
      std::optional<std::string> counter = nearest_counter(w);
      const ObjectInstance* recep = w.find(target);
      // Extract a contained target receptacle onto the counter.
      if (recep->state.contained_in && counter && *counter != target) {
        bool ok = assist.act(Action::Place, *counter);
        for (const std::string& anc : closed_ancestors(w, target)) {
          const ObjectInstance* a = w.find(anc);
          if (a->state.is_toggled_on) ok = ok && assist.act(Action::ToggleOff, anc);
          ok = ok && assist.act(Action::Open, anc);
        }
        ok = ok && assist.act(Action::Pickup, target);
        ok = ok && assist.act(Action::Place, *counter);
        ok = ok && assist.act(Action::Pickup, item);
        if (!ok) {
          record.outcome = direct;
          break;
        }
      }
      recep = w.find(target);
      bool opened = false;
      if (cat.at(recep->type).openable && !recep->state.is_open) {
        if (recep->state.is_toggled_on) assist.act(Action::ToggleOff, target);
        opened = assist.act(Action::Open, target);
      }
      record.outcome = attempt(w, Action::Place, target, &record.nav_path_len);
      // A full receptacle is cleared out to the counter before placing.
      if (!record.outcome.success &&
          record.outcome.failure_reason == FailureReason::CapacityExceeded &&
          counter && assist.act(Action::Place, *counter)) {  // stow held item
        int guard = cat.at(recep->type).capacity + 1;
        while (guard-- > 0) {
          const auto& contents = w.find(target)->state.contents;
          if (contents.empty()) break;
          std::string evict = contents.front();
          if (!assist.act(Action::Pickup, evict)) break;
          if (!assist.act(Action::Place, *counter)) break;
        }
        if (assist.act(Action::Pickup, item))
          record.outcome =
              attempt(w, Action::Place, target, &record.nav_path_len);
      }
      if (opened) assist.act(Action::Close, target);
      break;
    }
    case Action::Open:
    case Action::Close: {
      const ObjectInstance* t = w.find(target);
      if (t->state.is_toggled_on) assist.act(Action::ToggleOff, target);
      record.outcome = attempt(w, step.action, target, &record.nav_path_len);
      break;
    }
    case Action::ToggleOn:
    case Action::ToggleOff: {
      const ObjectInstance* t = w.find(target);
      if (t->state.is_open) assist.act(Action::Close, target);
      record.outcome = attempt(w, step.action, target, &record.nav_path_len);
      break;
    }
    case Action::Slice: {
      const ObjectInstance* t = w.find(target);
      std::optional<std::string> counter = nearest_counter(w);
      if (t->state.contained_in && counter && w.held) {
        std::string knife = *w.held;
        bool ok = assist.act(Action::Place, *counter);  // stow the knife
        for (const std::string& anc : closed_ancestors(w, target)) {
          const ObjectInstance* a = w.find(anc);
          if (a->state.is_toggled_on) ok = ok && assist.act(Action::ToggleOff, anc);
          ok = ok && assist.act(Action::Open, anc);
        }
        ok = ok && assist.act(Action::Pickup, target);
        ok = ok && assist.act(Action::Place, *counter);
        ok = ok && assist.act(Action::Pickup, knife);
        if (!ok) {
          record.outcome = direct;
          break;
        }
      }
      record.outcome = attempt(w, Action::Slice, target, &record.nav_path_len);
      break;
    }
    case Action::Pour:
    case Action::Stop:
      record.outcome = direct;
      break;
  }

  if (!record.outcome.success) return {world, record};
  return {std::move(w), record};
}

nlohmann::ordered_json trace_to_json(const ExecutionTrace& trace) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const StepRecord& r : trace.records) {
    nlohmann::ordered_json rec;
    rec["step"] = format_step(r.step);
    if (r.resolved) rec["resolved"] = *r.resolved;
    rec["nav_path_len"] = r.nav_path_len;
    if (!r.assist_subactions.empty()) {
      nlohmann::ordered_json subs = nlohmann::ordered_json::array();
      for (const auto& [a, id] : r.assist_subactions)
        subs.push_back(std::string(to_string(a)) + " " + id);
      rec["assist_subactions"] = subs;
    }
    rec["success"] = r.outcome.success;
    if (!r.outcome.success)
      rec["failure_reason"] = std::string(to_string(r.outcome.failure_reason));
    if (r.skipped_already_complete) rec["skipped_already_complete"] = true;
    records.push_back(rec);
  }
  j["records"] = records;
  j["termination"] = std::string(to_string(trace.termination));
  j["failures"] = trace.failures;
  j["steps"] = trace.steps;
  return j;
}

EpisodeOutcome run_episode(const EDHInstance& instance, Predictor& predictor,
                           const ExecutionConfig& config) {
  EpisodeOutcome out;
  out.final_world = instance.initial_world;
  predictor.begin_episode(instance);

  PredictorContext context;
  context.dialog = instance.dialog;
  context.task_hint = parse_task_spec(instance.dialog);
  ExecutorMemory memory;

  ExecutionTrace& trace = out.trace;
  while (trace.steps < config.step_limit) {
    context.observation = visible_objects(out.final_world);
    PlanStep step = predictor.predict_next(context);
    if (step.action == Action::Stop) {
      trace.termination = Termination::StopPredicted;
      out.attempted_plan.steps.push_back(PlanStep::stop());
      return out;
    }
    auto [next, record] =
        execute_step(out.final_world, step, config.mode, memory);
    out.final_world = std::move(next);
    out.attempted_plan.steps.push_back(step);
    context.plan_history.push_back({step, record.outcome.success});
    trace.steps++;
    if (!record.outcome.success) trace.failures++;
    trace.records.push_back(std::move(record));
    if (trace.failures >= config.failure_limit) {
      trace.termination = Termination::FailureLimit;
      out.attempted_plan.steps.push_back(PlanStep::stop());
      return out;
    }
  }
  trace.termination = Termination::StepLimit;
  out.attempted_plan.steps.push_back(PlanStep::stop());
  return out;
}

}  // namespace planbench
