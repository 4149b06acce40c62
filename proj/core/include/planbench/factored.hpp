#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "planbench/predictor.hpp"

namespace planbench {

struct ActionObjectDistribution {
  std::map<std::string, double> action_probs;  // action name (incl Stop)
  std::map<std::string, double> object_probs;  // object type name
};

// Count-based conditional model with independent action and object heads.
// Context features: task family, observation flags for the task's param
// types, and the last min(k, 2) plan steps. Queries back off from the most
// specific feature tuple down to the unconditional distribution.
class FactoredModel {
 public:
  struct Config {
    int k = 2;                  // history order
    double smoothing = 0.1;     // additive constant, applied at query time
    bool stop_supervised = true;

    bool operator==(const Config&) const = default;
  };

  FactoredModel() = default;
  explicit FactoredModel(Config config) : config_(config) {}

  const Config& config() const { return config_; }

  void observe(const PredictorContext& context, const PlanStep& target);

  ActionObjectDistribution factored_distribution(
      const PredictorContext& context) const;
  ActionObjectDistribution hierarchical_distribution(
      const PredictorContext& context) const;

  nlohmann::json to_json() const;
  static FactoredModel from_json(const nlohmann::json& j);

  bool operator==(const FactoredModel&) const = default;

 private:
  using CountTable = std::map<std::string, std::map<std::string, std::uint64_t>>;

  std::vector<std::string> context_keys(const PredictorContext& context) const;
  std::map<std::string, double> smoothed(
      const std::vector<CountTable>& tables,
      const std::vector<std::string>& keys,
      const std::vector<std::string>& vocab) const;

  Config config_;
  // One table per backoff level, most specific first.
  std::vector<CountTable> action_tables_;
  std::vector<CountTable> object_tables_;
  std::vector<CountTable> object_given_action_tables_;
};

// Trains on (instance, reference plan) pairs by teacher-forced replay of the
// reference plan from each instance's initial world. Throws on empty corpus.
FactoredModel train_factored(const std::vector<EDHInstance>& corpus,
                             FactoredModel::Config config);

// Greedy decode; invalid (action, object) pairs allowed.
PlanStep greedy_step(const ActionObjectDistribution& dist);

// Mask rule: keep the argmax object; if the pair is invalid, substitute the
// most probable action valid for that object. Non-Stop output is always a
// valid pair; Stop when no action fits.
PlanStep apply_validity_mask(const ActionObjectDistribution& dist);

enum class FactoredVariant { Factored, Hierarchical, Masked };

class FactoredPredictor : public Predictor {
 public:
  FactoredPredictor(FactoredModel model, FactoredVariant variant)
      : model_(std::move(model)), variant_(variant) {}
  PlanStep predict_next(const PredictorContext& context) override;

 private:
  FactoredModel model_;
  FactoredVariant variant_;
};

}  // namespace planbench
