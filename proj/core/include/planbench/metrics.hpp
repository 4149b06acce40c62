#pragma once

#include <string>
#include <vector>

#include "planbench/edh.hpp"
#include "planbench/plan.hpp"

namespace planbench {

// Tuple-token edit distance over (action, object) pairs, unit cost for
// insertion, deletion and substitution; no partial credit. Trailing Stop
// is stripped from both plans first.
int edit_distance(const Plan& pred, const Plan& gt);

struct NormalizedEds {
  double gt_norm = 0.0;
  double pred_norm = 0.0;
};
// Zero-length fallback: 0 when ed == 0, otherwise ed (denominator taken as 1).
NormalizedEds normalized_eds(int ed, int gt_len, int pred_len);

double fraction_valid(const Plan& plan, const WorldState& world);

struct EdhEval {
  bool success = false;
  double gc_fraction = 0.0;
};
EdhEval evaluate_edh(const WorldState& final_world, const EDHInstance& inst);

enum class Termination { StopPredicted, FailureLimit, StepLimit };
std::string_view to_string(Termination t);

struct EpisodeResult {
  std::string instance_id;
  TaskFamily family = TaskFamily::Coffee;
  bool success = false;
  double gc_fraction = 0.0;
  Plan attempted_plan;
  Plan reference_plan;
  Termination termination = Termination::StopPredicted;
  int failures = 0;
  int steps = 0;
  double frac_valid = 1.0;
};

struct ConditionStats {
  std::string condition;  // "<predictor>/<mode>"
  std::string split;
  std::string task;       // family name or "all"
  double sr = 0.0;
  double gc = 0.0;
  double mean_ed = 0.0;
  double gt_norm_ed = 0.0;
  double pred_norm_ed = 0.0;
  double frac_valid = 0.0;
  int n = 0;
};

struct MetricsReport {
  std::vector<ConditionStats> aggregates;  // one per condition
  std::vector<ConditionStats> per_task;    // family breakdown rows
  std::string seed_info;
};

MetricsReport aggregate_report(
    const std::vector<std::pair<std::string, EpisodeResult>>& results,
    const std::string& split, const std::string& seed_info);

std::string report_to_text(const MetricsReport& report);
std::string report_to_csv(const MetricsReport& report);

}  // namespace planbench
