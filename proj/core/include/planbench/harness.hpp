#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "planbench/executor.hpp"
#include "planbench/factored.hpp"
#include "planbench/generator.hpp"
#include "planbench/metrics.hpp"

namespace planbench {

const std::vector<std::string>& predictor_names();

// Factored variants read the trained model from model_path; the others
// ignore it. Throws on unknown names.
std::unique_ptr<Predictor> make_predictor(const std::string& name,
                                          const std::filesystem::path& model_path,
                                          std::uint64_t seed);

EpisodeResult run_one(const EDHInstance& instance, Predictor& predictor,
                      const ExecutionConfig& config);

nlohmann::ordered_json episode_result_to_json(const EpisodeResult& r);
EpisodeResult episode_result_from_json(const nlohmann::json& j);

struct RunConfig {
  std::filesystem::path data_dir;
  std::filesystem::path out_dir;
  std::string split = "divided_val_seen";
  std::vector<std::string> predictors = {"oracle"};
  std::vector<ExecutionMode> modes = {ExecutionMode::Direct,
                                      ExecutionMode::Assisted};
  std::filesystem::path model_path;
  std::uint64_t seed = 7;
  bool resume = true;
};

// Runs every (predictor, mode) condition over the split, writing one result
// file per episode under out_dir/results. Existing result files are reused
// when resume is set, so an interrupted run picks up where it stopped.
std::vector<std::pair<std::string, EpisodeResult>> run_suite(
    const RunConfig& config);

// Aggregates result files already on disk without running anything.
std::vector<std::pair<std::string, EpisodeResult>> collect_results(
    const RunConfig& config);

MetricsReport write_report(
    const std::vector<std::pair<std::string, EpisodeResult>>& results,
    const RunConfig& config);

int cmd_gen(const std::filesystem::path& data_dir, const GenConfig& config);
int cmd_train(const std::filesystem::path& data_dir,
              const std::filesystem::path& model_path,
              FactoredModel::Config config);
int cmd_run(const RunConfig& config);
int cmd_report(const RunConfig& config);

}  // namespace planbench
