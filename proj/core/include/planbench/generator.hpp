#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "planbench/edh.hpp"
#include "planbench/planner.hpp"

namespace planbench {

enum class SceneProfile { Seen, Unseen, Ambiguity };

std::string_view to_string(SceneProfile p);

struct GeneratedScene {
  std::string id;
  SceneProfile profile = SceneProfile::Seen;
  WorldState world;
  TaskSpec task;
};

// Deterministic for (seed, profile, id). Seen and Unseen draw from disjoint
// kitchen layout pools; Ambiguity scenes contain a duplicate of the task's
// vessel type shut inside a fridge closer to the agent than the visible one.
GeneratedScene generate_scene(std::uint64_t seed, SceneProfile profile,
                              const std::string& id);

struct SlicedDemo {
  GeneratedScene scene;
  std::vector<std::string> dialog;
  Demonstration demo;
  std::vector<EDHInstance> instances;  // one per resume point
};

// Plans a demonstration for the scene's task and cuts it into instances:
// one from the scene start and one at each completed-subtask boundary with
// remaining work. Instance goals are the state-count deltas between the cut
// world and the demonstration's final world.
SlicedDemo slice_demo(const GeneratedScene& scene, std::uint64_t dialog_seed);

struct GenConfig {
  std::uint64_t seed = 7;
  int train = 150;
  int eval_per_split = 50;  // each of divided_{val,test}_{seen,unseen}
  int ambiguity = 24;
};

const std::vector<std::string>& dataset_splits();

// Writes scenes/, demos/, edh/ and one id-list file per split under dir.
void write_dataset(const std::filesystem::path& dir, const GenConfig& config);

std::vector<EDHInstance> load_split(const std::filesystem::path& dir,
                                    const std::string& split);

}  // namespace planbench
