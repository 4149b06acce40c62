#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planbench/harness.hpp"

using namespace planbench;

int main(int argc, char** argv) {
  CLI::App app{"household plan prediction benchmark"};
  app.require_subcommand(1);

  std::string data_dir = "data";
  const char* env_out = std::getenv("PLANBENCH_OUT");
  std::string out_dir = env_out ? env_out : "out";
  std::string model_path = "out/factored_model.json";
  std::uint64_t seed = 7;

  GenConfig gen_config;
  auto* gen = app.add_subcommand("gen", "generate scenes, demos and instances");
  gen->add_option("--data", data_dir, "dataset directory");
  gen->add_option("--seed", gen_config.seed, "generation seed");
  gen->add_option("--train", gen_config.train, "train demo count");
  gen->add_option("--eval", gen_config.eval_per_split,
                  "demo count per val/test split");
  gen->add_option("--ambiguity", gen_config.ambiguity,
                  "ambiguity-profile demo count");

  FactoredModel::Config model_config;
  bool no_stop = false;
  auto* train = app.add_subcommand("train", "fit the count model on train");
  train->add_option("--data", data_dir, "dataset directory");
  train->add_option("--model", model_path, "output model file");
  train->add_option("--k", model_config.k, "history order");
  train->add_option("--smoothing", model_config.smoothing,
                    "additive smoothing constant");
  train->add_flag("--no-stop", no_stop, "drop Stop supervision");

  RunConfig run_config;
  std::vector<std::string> predictors = {"oracle", "coref-oracle", "baseline",
                                         "random", "factored", "hierarchical",
                                         "masked"};
  std::vector<std::string> modes = {"direct", "assisted"};
  bool no_resume = false;
  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--data", data_dir, "dataset directory");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--split", run_config.split, "split name");
    cmd->add_option("--predictors", predictors, "predictor names")
        ->delimiter(',');
    cmd->add_option("--modes", modes, "execution modes")->delimiter(',');
    cmd->add_option("--model", model_path, "trained model file");
    cmd->add_option("--seed", seed, "run seed");
  };
  auto* run = app.add_subcommand("run", "run predictors over a split");
  add_run_options(run);
  run->add_flag("--no-resume", no_resume, "ignore existing result files");
  auto* report = app.add_subcommand("report",
                                    "aggregate existing result files");
  add_run_options(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(data_dir, gen_config);
    if (train->parsed()) {
      model_config.stop_supervised = !no_stop;
      return cmd_train(data_dir, model_path, model_config);
    }
    run_config.data_dir = data_dir;
    run_config.out_dir = out_dir;
    run_config.model_path = model_path;
    run_config.seed = seed;
    run_config.resume = !no_resume;
    run_config.predictors = predictors;
    run_config.modes.clear();
    for (const std::string& m : modes) {
      auto mode = mode_from_string(m);
      if (!mode) {
        std::cerr << "unknown execution mode: " << m << "\n";
        return 1;
      }
      run_config.modes.push_back(*mode);
    }
    if (run->parsed()) return cmd_run(run_config);
    return cmd_report(run_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
