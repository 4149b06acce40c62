#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "planbench/edh.hpp"
#include "planbench/plan.hpp"
#include "planbench/tasks.hpp"
#include "planbench/world.hpp"

namespace planbench {

struct PredictorContext {
  std::vector<std::string> dialog;
  std::vector<std::pair<PlanStep, bool>> plan_history;  // (step, success)
  Observation observation;
  std::optional<TaskSpec> task_hint;
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual void begin_episode(const EDHInstance& instance) { (void)instance; }
  virtual PlanStep predict_next(const PredictorContext& context) = 0;
};

// Replays the reference plan by step index; Stop past the end.
class OraclePredictor : public Predictor {
 public:
  void begin_episode(const EDHInstance& instance) override;
  PlanStep predict_next(const PredictorContext& context) override;

 private:
  Plan plan_;
};

// Same replay with exact instance ids.
class CorefOraclePredictor : public Predictor {
 public:
  void begin_episode(const EDHInstance& instance) override;
  PlanStep predict_next(const PredictorContext& context) override;

 private:
  Plan plan_;
};

// Language-only whole-plan template expansion, replayed verbatim.
Plan whole_plan_baseline(const std::vector<std::string>& dialog);

class BaselinePredictor : public Predictor {
 public:
  void begin_episode(const EDHInstance& instance) override;
  PlanStep predict_next(const PredictorContext& context) override;

 private:
  Plan plan_;
};

// Uniformly random affordance-valid steps; never emits Stop.
class RandomValidPredictor : public Predictor {
 public:
  explicit RandomValidPredictor(std::uint64_t seed) : seed_(seed) {}
  void begin_episode(const EDHInstance& instance) override;
  PlanStep predict_next(const PredictorContext& context) override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

// A predictor that always emits the same (invalid) step; test helper.
class ConstantPredictor : public Predictor {
 public:
  explicit ConstantPredictor(PlanStep step) : step_(std::move(step)) {}
  PlanStep predict_next(const PredictorContext&) override { return step_; }

 private:
  PlanStep step_;
};

}  // namespace planbench
