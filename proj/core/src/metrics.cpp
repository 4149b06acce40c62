#include "planbench/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "planbench/catalog.hpp"

namespace planbench {

namespace {

// Tokens compare at the type level so an id-level plan scores 0 against the
// equivalent type-level one.
std::pair<Action, std::string> token_of(const PlanStep& s) {
  std::string name = s.object_ref.kind == ObjectRef::Kind::ById
                         ? split_id(s.object_ref.name).first
                         : s.object_ref.name;
  return {s.action, std::move(name)};
}

}  // namespace

int edit_distance(const Plan& pred, const Plan& gt) {
  std::vector<std::pair<Action, std::string>> a, b;
  for (const PlanStep& s : pred.without_stop()) a.push_back(token_of(s));
  for (const PlanStep& s : gt.without_stop()) b.push_back(token_of(s));
  const std::size_t n = a.size(), m = b.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

NormalizedEds normalized_eds(int ed, int gt_len, int pred_len) {
  NormalizedEds out;
  out.gt_norm = gt_len > 0 ? static_cast<double>(ed) / gt_len
                           : (ed == 0 ? 0.0 : static_cast<double>(ed));
  out.pred_norm = pred_len > 0 ? static_cast<double>(ed) / pred_len
                               : (ed == 0 ? 0.0 : static_cast<double>(ed));
  return out;
}

double fraction_valid(const Plan& plan, const WorldState& world) {
  const std::vector<PlanStep> steps = plan.without_stop();
  if (steps.empty()) return 1.0;
  int valid = 0;
  for (const PlanStep& s : steps) {
    std::string type = s.object_ref.name;
    if (s.object_ref.kind == ObjectRef::Kind::ById) {
      if (const ObjectInstance* obj = world.find(s.object_ref.name))
        type = obj->type;
      else
        type = split_id(s.object_ref.name).first;
    }
    if (AffordanceTable::instance().valid(s.action, type)) ++valid;
  }
  return static_cast<double>(valid) / static_cast<double>(steps.size());
}

EdhEval evaluate_edh(const WorldState& final_world, const EDHInstance& inst) {
  EdhEval eval;
  if (inst.goals.empty()) return {true, 1.0};
  int satisfied = 0;
  for (const GoalCondition& g : inst.goals)
    if (check_predicate(final_world, g)) ++satisfied;
  eval.gc_fraction =
      static_cast<double>(satisfied) / static_cast<double>(inst.goals.size());
  eval.success = satisfied == static_cast<int>(inst.goals.size());
  return eval;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::StopPredicted: return "StopPredicted";
    case Termination::FailureLimit: return "FailureLimit";
    case Termination::StepLimit: return "StepLimit";
  }
  return "?";
}

namespace {

struct Accum {
  double sr = 0, gc = 0, ed = 0, gt_norm = 0, pred_norm = 0, fv = 0;
  int n = 0;

  void add(const EpisodeResult& r) {
    int ed_raw = edit_distance(r.attempted_plan, r.reference_plan);
    NormalizedEds norm = normalized_eds(
        ed_raw, static_cast<int>(r.reference_plan.without_stop().size()),
        static_cast<int>(r.attempted_plan.without_stop().size()));
    sr += r.success ? 1.0 : 0.0;
    gc += r.gc_fraction;
    ed += ed_raw;
    gt_norm += norm.gt_norm;
    pred_norm += norm.pred_norm;
    fv += r.frac_valid;
    ++n;
  }

  ConditionStats stats(const std::string& condition, const std::string& split,
                       const std::string& task) const {
    ConditionStats s;
    s.condition = condition;
    s.split = split;
    s.task = task;
    if (n > 0) {
      s.sr = sr / n;
      s.gc = gc / n;
      s.mean_ed = ed / n;
      s.gt_norm_ed = gt_norm / n;
      s.pred_norm_ed = pred_norm / n;
      s.frac_valid = fv / n;
    }
    s.n = n;
    return s;
  }
};

}  // namespace

MetricsReport aggregate_report(
    const std::vector<std::pair<std::string, EpisodeResult>>& results,
    const std::string& split, const std::string& seed_info) {
  MetricsReport report;
  report.seed_info = seed_info;

  std::map<std::string, Accum> by_condition;
  std::map<std::pair<std::string, TaskFamily>, Accum> by_task;
  std::vector<std::string> condition_order;
  for (const auto& [condition, r] : results) {
    if (!by_condition.count(condition)) condition_order.push_back(condition);
    by_condition[condition].add(r);
    by_task[{condition, r.family}].add(r);
  }
  for (const std::string& c : condition_order) {
    report.aggregates.push_back(by_condition[c].stats(c, split, "all"));
    for (TaskFamily f : kAllFamilies) {
      auto it = by_task.find({c, f});
      if (it != by_task.end())
        report.per_task.push_back(
            it->second.stats(c, split, std::string(to_string(f))));
    }
  }
  return report;
}

namespace {

void print_row(std::ostringstream& out, const ConditionStats& s) {
  out << std::left << std::setw(26) << s.condition << std::setw(22) << s.task
      << std::right << std::fixed << std::setprecision(4) << std::setw(8)
      << s.sr << std::setw(8) << s.gc << std::setw(9) << std::setprecision(2)
      << s.mean_ed << std::setw(10) << std::setprecision(4) << s.frac_valid
      << std::setw(9) << s.gt_norm_ed << std::setw(9) << s.pred_norm_ed
      << std::setw(6) << s.n << "\n";
}

}  // namespace

std::string report_to_text(const MetricsReport& report) {
  std::ostringstream out;
  out << "# " << report.seed_info << "\n";
  out << "# normalized EDs averaged per episode; zero-length denominators "
         "treated as 1\n";
  out << std::left << std::setw(26) << "condition" << std::setw(22) << "task"
      << std::right << std::setw(8) << "SR" << std::setw(8) << "GC"
      << std::setw(9) << "ED" << std::setw(10) << "FracVal" << std::setw(9)
      << "GTNormED" << std::setw(9) << "PNormED" << std::setw(6) << "n"
      << "\n";
  for (const ConditionStats& s : report.aggregates) print_row(out, s);
  out << "\n";
  for (const ConditionStats& s : report.per_task) print_row(out, s);
  return out.str();
}

std::string report_to_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "condition,split,task,sr,gc,ed,gt_norm_ed,pred_norm_ed,frac_valid,n\n";
  auto row = [&](const ConditionStats& s) {
    out << s.condition << "," << s.split << "," << s.task << "," << std::fixed
        << std::setprecision(6) << s.sr << "," << s.gc << "," << s.mean_ed
        << "," << s.gt_norm_ed << "," << s.pred_norm_ed << "," << s.frac_valid
        << "," << s.n << "\n";
  };
  for (const ConditionStats& s : report.aggregates) row(s);
  for (const ConditionStats& s : report.per_task) row(s);
  return out.str();
}

}  // namespace planbench
