#include "planbench/predictor.hpp"

#include <functional>

#include "planbench/dialog.hpp"

namespace planbench {

namespace {

PlanStep step_of(Action a, const std::string& type) {
  PlanStep s;
  s.action = a;
  s.object_ref = ObjectRef::by_type(type);
  return s;
}

void append_microwave_cook(std::vector<PlanStep>& steps,
                           const std::string& item) {
  steps.push_back(step_of(Action::Pickup, item));
  steps.push_back(step_of(Action::Open, "Microwave"));
  steps.push_back(step_of(Action::Place, "Microwave"));
  steps.push_back(step_of(Action::Close, "Microwave"));
  steps.push_back(step_of(Action::ToggleOn, "Microwave"));
  steps.push_back(step_of(Action::ToggleOff, "Microwave"));
  steps.push_back(step_of(Action::Open, "Microwave"));
  steps.push_back(step_of(Action::Pickup, item));
  steps.push_back(step_of(Action::Close, "Microwave"));
}

void append_fill_water(std::vector<PlanStep>& steps, const std::string& vessel) {
  steps.push_back(step_of(Action::Pickup, vessel));
  steps.push_back(step_of(Action::Place, "Sink"));
  steps.push_back(step_of(Action::ToggleOn, "Faucet"));
  steps.push_back(step_of(Action::ToggleOff, "Faucet"));
  steps.push_back(step_of(Action::Pickup, vessel));
}

void append_template(std::vector<PlanStep>& steps, const TaskSpec& task) {
  switch (task.family) {
    case TaskFamily::Coffee:
      steps.push_back(step_of(Action::Pickup, "Mug"));
      steps.push_back(step_of(Action::Place, "CoffeeMachine"));
      steps.push_back(step_of(Action::ToggleOn, "CoffeeMachine"));
      break;
    case TaskFamily::WaterPlant:
      append_fill_water(steps, "Cup");
      steps.push_back(step_of(Action::Pour, "Plant"));
      break;
    case TaskFamily::PlateOfToast: {
      steps.push_back(step_of(Action::Pickup, "Knife"));
      steps.push_back(step_of(Action::Slice, "Bread"));
      steps.push_back(step_of(Action::Place, "CounterTop"));
      append_microwave_cook(steps, "BreadSliced");
      steps.push_back(step_of(Action::Place, "Plate"));
      break;
    }
    case TaskFamily::CleanAllX:
      append_fill_water(steps, task.x);
      steps.push_back(step_of(Action::Place, "CounterTop"));
      break;
    case TaskFamily::PutAllXOnY:
    case TaskFamily::PutAllXInOneY:
      for (int i = 0; i < 2; ++i) {
        steps.push_back(step_of(Action::Pickup, task.x));
        steps.push_back(step_of(Action::Place, task.y));
      }
      break;
    case TaskFamily::NSlicesOfXInY: {
      const std::string sliced = Catalog::instance().at(task.x).sliced_into;
      steps.push_back(step_of(Action::Pickup, "Knife"));
      steps.push_back(step_of(Action::Slice, task.x));
      steps.push_back(step_of(Action::Place, "CounterTop"));
      for (int i = 0; i < task.n; ++i) {
        steps.push_back(step_of(Action::Pickup, sliced));
        steps.push_back(step_of(Action::Place, task.y));
      }
      break;
    }
    case TaskFamily::NCookedSlicesOfXInY: {
      const std::string sliced = Catalog::instance().at(task.x).sliced_into;
      steps.push_back(step_of(Action::Pickup, "Knife"));
      steps.push_back(step_of(Action::Slice, task.x));
      steps.push_back(step_of(Action::Place, "CounterTop"));
      for (int i = 0; i < task.n; ++i) {
        append_microwave_cook(steps, sliced);
        steps.push_back(step_of(Action::Place, task.y));
      }
      break;
    }
    case TaskFamily::BoilX:
      append_fill_water(steps, "Cup");
      steps.push_back(step_of(Action::Pour, "Pot"));
      steps.push_back(step_of(Action::Pickup, task.x));
      steps.push_back(step_of(Action::Place, "Pot"));
      steps.push_back(step_of(Action::ToggleOn, "Stove"));
      break;
    case TaskFamily::Salad: {
      TaskSpec part = task;
      part.family = TaskFamily::NSlicesOfXInY;
      part.n = 1;
      part.x = "Tomato";
      part.y = "Plate";
      append_template(steps, part);
      part.family = TaskFamily::NCookedSlicesOfXInY;
      part.x = "Potato";
      append_template(steps, part);
      break;
    }
    case TaskFamily::Sandwich: {
      TaskSpec part = task;
      part.family = TaskFamily::NCookedSlicesOfXInY;
      part.n = 2;
      part.x = "Bread";
      part.y = "Plate";
      append_template(steps, part);
      part.family = TaskFamily::NSlicesOfXInY;
      part.n = 1;
      part.x = "Tomato";
      append_template(steps, part);
      break;
    }
    case TaskFamily::Breakfast: {
      TaskSpec part = task;
      part.family = TaskFamily::Coffee;
      append_template(steps, part);
      part.family = TaskFamily::PlateOfToast;
      append_template(steps, part);
      break;
    }
  }
}

}  // namespace

void OraclePredictor::begin_episode(const EDHInstance& instance) {
  plan_ = instance.reference_plan;
}

PlanStep OraclePredictor::predict_next(const PredictorContext& context) {
  std::size_t i = context.plan_history.size();
  if (i >= plan_.steps.size()) return PlanStep::stop();
  return plan_.steps[i];
}

void CorefOraclePredictor::begin_episode(const EDHInstance& instance) {
  plan_ = instance.reference_plan_ids;
}

PlanStep CorefOraclePredictor::predict_next(const PredictorContext& context) {
  std::size_t i = context.plan_history.size();
  if (i >= plan_.steps.size()) return PlanStep::stop();
  return plan_.steps[i];
}

Plan whole_plan_baseline(const std::vector<std::string>& dialog) {
  Plan plan;
  if (auto task = parse_task_spec(dialog)) append_template(plan.steps, *task);
  plan.steps.push_back(PlanStep::stop());
  return plan;
}

void BaselinePredictor::begin_episode(const EDHInstance& instance) {
  plan_ = whole_plan_baseline(instance.dialog);
}

PlanStep BaselinePredictor::predict_next(const PredictorContext& context) {
  std::size_t i = context.plan_history.size();
  if (i >= plan_.steps.size()) return PlanStep::stop();
  return plan_.steps[i];
}

void RandomValidPredictor::begin_episode(const EDHInstance& instance) {
  std::uint64_t h = seed_;
  for (char c : instance.id) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
  rng_.seed(h);
}

PlanStep RandomValidPredictor::predict_next(const PredictorContext&) {
  const auto& pairs = AffordanceTable::instance().valid_pairs();
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  auto it = pairs.begin();
  std::advance(it, pick(rng_));
  return {it->first, ObjectRef::by_type(it->second)};
}

}  // namespace planbench
