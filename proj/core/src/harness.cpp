#include "planbench/harness.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace planbench {

namespace {

std::string condition_name(const std::string& predictor, ExecutionMode mode) {
  return predictor + "/" + std::string(to_string(mode));
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '/') c = '_';
  return out;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(f);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace

const std::vector<std::string>& predictor_names() {
  static const std::vector<std::string> names = {
      "oracle", "coref-oracle", "baseline", "random",
      "factored", "hierarchical", "masked"};
  return names;
}

std::unique_ptr<Predictor> make_predictor(
    const std::string& name, const std::filesystem::path& model_path,
    std::uint64_t seed) {
  if (name == "oracle") return std::make_unique<OraclePredictor>();
  if (name == "coref-oracle") return std::make_unique<CorefOraclePredictor>();
  if (name == "baseline") return std::make_unique<BaselinePredictor>();
  if (name == "random") return std::make_unique<RandomValidPredictor>(seed);
  FactoredVariant variant;
  if (name == "factored")
    variant = FactoredVariant::Factored;
  else if (name == "hierarchical")
    variant = FactoredVariant::Hierarchical;
  else if (name == "masked")
    variant = FactoredVariant::Masked;
  else
    throw std::runtime_error("unknown predictor: " + name);
  FactoredModel model = FactoredModel::from_json(load_json_file(model_path));
  return std::make_unique<FactoredPredictor>(std::move(model), variant);
}

EpisodeResult run_one(const EDHInstance& instance, Predictor& predictor,
                      const ExecutionConfig& config) {
  EpisodeOutcome out = run_episode(instance, predictor, config);
  EpisodeResult r;
  r.instance_id = instance.id;
  r.family = instance.task.family;
  EdhEval ev = evaluate_edh(out.final_world, instance);
  r.success = ev.success;
  r.gc_fraction = ev.gc_fraction;
  r.attempted_plan = out.attempted_plan;
  r.reference_plan = instance.reference_plan;
  r.termination = out.trace.termination;
  r.failures = out.trace.failures;
  r.steps = out.trace.steps;
  r.frac_valid = fraction_valid(out.attempted_plan, instance.initial_world);
  return r;
}

nlohmann::ordered_json episode_result_to_json(const EpisodeResult& r) {
  nlohmann::ordered_json j;
  j["instance_id"] = r.instance_id;
  j["family"] = std::string(to_string(r.family));
  j["success"] = r.success;
  j["gc_fraction"] = r.gc_fraction;
  j["attempted_plan"] = format_plan(r.attempted_plan);
  j["reference_plan"] = format_plan(r.reference_plan);
  j["termination"] = std::string(to_string(r.termination));
  j["failures"] = r.failures;
  j["steps"] = r.steps;
  j["frac_valid"] = r.frac_valid;
  return j;
}

EpisodeResult episode_result_from_json(const nlohmann::json& j) {
  EpisodeResult r;
  r.instance_id = j.at("instance_id").get<std::string>();
  auto family = family_from_string(j.at("family").get<std::string>());
  if (!family) throw std::runtime_error("bad task family in result file");
  r.family = *family;
  r.success = j.at("success").get<bool>();
  r.gc_fraction = j.at("gc_fraction").get<double>();
  r.attempted_plan = parse_plan(j.at("attempted_plan").get<std::string>());
  r.reference_plan = parse_plan(j.at("reference_plan").get<std::string>());
  std::string term = j.at("termination").get<std::string>();
  if (term == "StopPredicted")
    r.termination = Termination::StopPredicted;
  else if (term == "FailureLimit")
    r.termination = Termination::FailureLimit;
  else if (term == "StepLimit")
    r.termination = Termination::StepLimit;
  else
    throw std::runtime_error("bad termination in result file");
  r.failures = j.at("failures").get<int>();
  r.steps = j.at("steps").get<int>();
  r.frac_valid = j.at("frac_valid").get<double>();
  return r;
}

std::vector<std::pair<std::string, EpisodeResult>> run_suite(
    const RunConfig& config) {
  std::vector<EDHInstance> instances = load_split(config.data_dir,
                                                  config.split);
  std::vector<std::pair<std::string, EpisodeResult>> all;
  for (const std::string& name : config.predictors) {
    for (ExecutionMode mode : config.modes) {
      std::string condition = condition_name(name, mode);
      std::filesystem::path cond_dir =
          config.out_dir / "results" / config.split / sanitize(condition);
      std::filesystem::create_directories(cond_dir);
      auto predictor = make_predictor(name, config.model_path, config.seed);
      ExecutionConfig exec;
      exec.mode = mode;
      for (const EDHInstance& inst : instances) {
        std::filesystem::path file = cond_dir / (inst.id + ".json");
        EpisodeResult r;
        if (config.resume && std::filesystem::exists(file)) {
          r = episode_result_from_json(load_json_file(file));
        } else {
          r = run_one(inst, *predictor, exec);
          write_text(file, episode_result_to_json(r).dump(2) + "\n");
        }
        all.emplace_back(condition, std::move(r));
      }
    }
  }
  return all;
}

std::vector<std::pair<std::string, EpisodeResult>> collect_results(
    const RunConfig& config) {
  std::vector<EDHInstance> instances = load_split(config.data_dir,
                                                  config.split);
  std::vector<std::pair<std::string, EpisodeResult>> all;
  for (const std::string& name : config.predictors) {
    for (ExecutionMode mode : config.modes) {
      std::string condition = condition_name(name, mode);
      std::filesystem::path cond_dir =
          config.out_dir / "results" / config.split / sanitize(condition);
      for (const EDHInstance& inst : instances) {
        std::filesystem::path file = cond_dir / (inst.id + ".json");
        if (!std::filesystem::exists(file))
          throw std::runtime_error("missing result file " + file.string() +
                                   " (run the suite first)");
        all.emplace_back(condition,
                         episode_result_from_json(load_json_file(file)));
      }
    }
  }
  return all;
}

MetricsReport write_report(
    const std::vector<std::pair<std::string, EpisodeResult>>& results,
    const RunConfig& config) {
  MetricsReport report = aggregate_report(
      results, config.split, "seed=" + std::to_string(config.seed));
  std::filesystem::create_directories(config.out_dir);
  write_text(config.out_dir / ("report_" + config.split + ".txt"),
             report_to_text(report));
  write_text(config.out_dir / ("report_" + config.split + ".csv"),
             report_to_csv(report));
  return report;
}

int cmd_gen(const std::filesystem::path& data_dir, const GenConfig& config) {
  write_dataset(data_dir, config);
  int total = 0;
  for (const std::string& split : dataset_splits()) {
    std::ifstream list(data_dir / (split + ".list"));
    int n = 0;
    std::string line;
    while (std::getline(list, line))
      if (!line.empty()) ++n;
    std::cout << split << ": " << n << " instances\n";
    total += n;
  }
  std::cout << "total: " << total << " instances\n";
  return 0;
}

int cmd_train(const std::filesystem::path& data_dir,
              const std::filesystem::path& model_path,
              FactoredModel::Config config) {
  std::vector<EDHInstance> corpus = load_split(data_dir, "train");
  FactoredModel model = train_factored(corpus, config);
  std::filesystem::create_directories(model_path.parent_path().empty()
                                          ? "."
                                          : model_path.parent_path());
  write_text(model_path, model.to_json().dump(2) + "\n");
  std::cout << "trained on " << corpus.size() << " instances -> "
            << model_path.string() << "\n";
  return 0;
}

int cmd_run(const RunConfig& config) {
  auto results = run_suite(config);
  MetricsReport report = write_report(results, config);
  std::cout << report_to_text(report);
  return 0;
}

int cmd_report(const RunConfig& config) {
  auto results = collect_results(config);
  MetricsReport report = write_report(results, config);
  std::cout << report_to_text(report);
  return 0;
}

}  // namespace planbench
