#include "planbench/factored.hpp"

#include <algorithm>
#include <stdexcept>

#include "planbench/dialog.hpp"
#include "planbench/executor.hpp"

namespace planbench {

namespace {

const std::vector<std::string>& action_vocab() {
  static const std::vector<std::string> vocab = [] {
    std::vector<std::string> v;
    for (Action a : kInteractionActions) v.push_back(std::string(to_string(a)));
    v.push_back("Stop");  // last: never wins count ties
    return v;
  }();
  return vocab;
}

const std::vector<std::string>& object_vocab() {
  static const std::vector<std::string> vocab = [] {
    std::vector<std::string> v;
    for (const ObjectType& t : Catalog::instance().types()) v.push_back(t.name);
    return v;
  }();
  return vocab;
}

std::string step_token(const PlanStep& s) {
  if (s.action == Action::Stop) return "Stop";
  std::string type = s.object_ref.kind == ObjectRef::Kind::ById
                         ? split_id(s.object_ref.name).first
                         : s.object_ref.name;
  return std::string(to_string(s.action)) + ":" + type;
}

char observation_flag(const PredictorContext& context,
                      const std::string& type) {
  bool seen = false, contained = false;
  for (const ObsEntry& e : context.observation) {
    if (e.type != type) continue;
    if (e.held) return 'H';
    seen = true;
    if (e.contained_in) contained = true;
  }
  if (contained) return 'C';
  if (seen) return 'V';
  return 'A';
}

std::string argmax(const std::map<std::string, double>& probs,
                   const std::vector<std::string>& order) {
  std::string best;
  double best_p = -1.0;
  for (const std::string& tok : order) {
    auto it = probs.find(tok);
    double p = it == probs.end() ? 0.0 : it->second;
    if (p > best_p) {
      best_p = p;
      best = tok;
    }
  }
  return best;
}

}  // namespace

std::vector<std::string> FactoredModel::context_keys(
    const PredictorContext& context) const {
  std::string fam = "-";
  std::string obs;
  if (context.task_hint) {
    fam = std::string(to_string(context.task_hint->family));
    if (context.task_hint->needs_x())
      obs += observation_flag(context, context.task_hint->x);
    if (context.task_hint->needs_y())
      obs += observation_flag(context, context.task_hint->y);
  }
  std::vector<std::string> keys;
  int max_h = std::min(config_.k, 2);
  for (int j = max_h; j >= 0; --j) {
    std::string hist;
    std::size_t n = context.plan_history.size();
    for (std::size_t i = n >= static_cast<std::size_t>(j) ? n - j : 0; i < n;
         ++i) {
      if (!hist.empty()) hist += ",";
      hist += step_token(context.plan_history[i].first);
    }
    keys.push_back("f=" + fam + "|o=" + obs + "|h=" + hist);
  }
  keys.push_back("f=" + fam);
  keys.push_back("");
  return keys;
}

std::map<std::string, double> FactoredModel::smoothed(
    const std::vector<CountTable>& tables, const std::vector<std::string>& keys,
    const std::vector<std::string>& vocab) const {
  const std::map<std::string, std::uint64_t>* counts = nullptr;
  for (std::size_t level = 0; level < keys.size() && level < tables.size();
       ++level) {
    auto it = tables[level].find(keys[level]);
    if (it != tables[level].end() && !it->second.empty()) {
      counts = &it->second;
      break;
    }
  }
  std::uint64_t total = 0;
  if (counts)
    for (const auto& [tok, c] : *counts) total += c;
  const double s = config_.smoothing;
  const double denom = static_cast<double>(total) + s * vocab.size();
  std::map<std::string, double> probs;
  for (const std::string& tok : vocab) {
    std::uint64_t c = 0;
    if (counts) {
      auto it = counts->find(tok);
      if (it != counts->end()) c = it->second;
    }
    probs[tok] = (static_cast<double>(c) + s) / denom;
  }
  return probs;
}

void FactoredModel::observe(const PredictorContext& context,
                            const PlanStep& target) {
  std::vector<std::string> keys = context_keys(context);
  if (action_tables_.size() < keys.size()) {
    action_tables_.resize(keys.size());
    object_tables_.resize(keys.size());
    object_given_action_tables_.resize(keys.size());
  }
  std::string action = std::string(to_string(target.action));
  for (std::size_t level = 0; level < keys.size(); ++level) {
    action_tables_[level][keys[level]][action]++;
    if (target.action != Action::Stop) {
      std::string type = target.object_ref.kind == ObjectRef::Kind::ById
                             ? split_id(target.object_ref.name).first
                             : target.object_ref.name;
      object_tables_[level][keys[level]][type]++;
      object_given_action_tables_[level][keys[level] + "|a=" + action][type]++;
    }
  }
}

ActionObjectDistribution FactoredModel::factored_distribution(
    const PredictorContext& context) const {
  std::vector<std::string> keys = context_keys(context);
  ActionObjectDistribution dist;
  dist.action_probs = smoothed(action_tables_, keys, action_vocab());
  dist.object_probs = smoothed(object_tables_, keys, object_vocab());
  return dist;
}

ActionObjectDistribution FactoredModel::hierarchical_distribution(
    const PredictorContext& context) const {
  std::vector<std::string> keys = context_keys(context);
  ActionObjectDistribution dist;
  dist.action_probs = smoothed(action_tables_, keys, action_vocab());
  std::string a = argmax(dist.action_probs, action_vocab());
  std::vector<std::string> cond_keys;
  for (const std::string& k : keys) cond_keys.push_back(k + "|a=" + a);
  // Conditional tables first; unconditional object table as final backoff.
  bool have = false;
  for (std::size_t level = 0;
       level < cond_keys.size() && level < object_given_action_tables_.size();
       ++level) {
    auto it = object_given_action_tables_[level].find(cond_keys[level]);
    if (it != object_given_action_tables_[level].end() && !it->second.empty()) {
      have = true;
      break;
    }
  }
  dist.object_probs = have
                          ? smoothed(object_given_action_tables_, cond_keys,
                                     object_vocab())
                          : smoothed(object_tables_, keys, object_vocab());
  return dist;
}

nlohmann::json FactoredModel::to_json() const {
  nlohmann::json j;
  j["config"]["k"] = config_.k;
  j["config"]["smoothing"] = config_.smoothing;
  j["config"]["stop_supervised"] = config_.stop_supervised;
  auto dump = [](const std::vector<CountTable>& tables) {
    nlohmann::json out = nlohmann::json::array();
    for (const CountTable& t : tables) out.push_back(t);
    return out;
  };
  j["action"] = dump(action_tables_);
  j["object"] = dump(object_tables_);
  j["object_given_action"] = dump(object_given_action_tables_);
  return j;
}

FactoredModel FactoredModel::from_json(const nlohmann::json& j) {
  Config config;
  config.k = j["config"]["k"].get<int>();
  config.smoothing = j["config"]["smoothing"].get<double>();
  config.stop_supervised = j["config"]["stop_supervised"].get<bool>();
  FactoredModel model(config);
  auto load = [](const nlohmann::json& in, std::vector<CountTable>& tables) {
    for (const nlohmann::json& t : in) tables.push_back(t.get<CountTable>());
  };
  load(j["action"], model.action_tables_);
  load(j["object"], model.object_tables_);
  load(j["object_given_action"], model.object_given_action_tables_);
  return model;
}

FactoredModel train_factored(const std::vector<EDHInstance>& corpus,
                             FactoredModel::Config config) {
  if (corpus.empty())
    throw std::runtime_error("train_factored: empty corpus");
  FactoredModel model(config);
  ExecutionConfig exec;
  exec.mode = ExecutionMode::Assisted;
  for (const EDHInstance& inst : corpus) {
    WorldState world = inst.initial_world;
    ExecutorMemory memory;
    PredictorContext context;
    context.dialog = inst.dialog;
    context.task_hint = parse_task_spec(inst.dialog);
    for (const PlanStep& step : inst.reference_plan.steps) {
      context.observation = visible_objects(world);
      if (step.action == Action::Stop) {
        if (config.stop_supervised) model.observe(context, step);
        break;
      }
      model.observe(context, step);
      auto [next, record] = execute_step(world, step, exec.mode, memory);
      world = std::move(next);
      context.plan_history.push_back({step, record.outcome.success});
    }
  }
  return model;
}

PlanStep greedy_step(const ActionObjectDistribution& dist) {
  std::string a = argmax(dist.action_probs, action_vocab());
  if (a == "Stop") return PlanStep::stop();
  std::string o = argmax(dist.object_probs, object_vocab());
  return {*action_from_string(a), ObjectRef::by_type(o)};
}

PlanStep apply_validity_mask(const ActionObjectDistribution& dist) {
  std::string a = argmax(dist.action_probs, action_vocab());
  if (a == "Stop") return PlanStep::stop();
  std::string o = argmax(dist.object_probs, object_vocab());
  const AffordanceTable& aff = AffordanceTable::instance();
  if (aff.valid(*action_from_string(a), o))
    return {*action_from_string(a), ObjectRef::by_type(o)};
  // Actions by descending probability, enum order on ties.
  std::vector<std::string> order;
  for (Action act : kInteractionActions)
    order.push_back(std::string(to_string(act)));
  auto prob = [&](const std::string& x) {
    auto it = dist.action_probs.find(x);
    return it == dist.action_probs.end() ? 0.0 : it->second;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& x, const std::string& y) {
                     return prob(x) > prob(y);
                   });
  for (const std::string& cand : order) {
    Action act = *action_from_string(cand);
    if (aff.valid(act, o)) return {act, ObjectRef::by_type(o)};
  }
  return PlanStep::stop();
}

PlanStep FactoredPredictor::predict_next(const PredictorContext& context) {
  switch (variant_) {
    case FactoredVariant::Factored:
      return greedy_step(model_.factored_distribution(context));
    case FactoredVariant::Hierarchical:
      return greedy_step(model_.hierarchical_distribution(context));
    case FactoredVariant::Masked:
      return apply_validity_mask(model_.factored_distribution(context));
  }
  return PlanStep::stop();
}

}  // namespace planbench
