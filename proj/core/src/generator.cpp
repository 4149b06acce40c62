#include "planbench/generator.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "planbench/dialog.hpp"
#include "planbench/scene.hpp"

namespace planbench {

namespace {

using Rng = std::mt19937_64;

// Unbiased enough for scene variety and identical on every platform,
// unlike std::uniform_int_distribution.
int pick(Rng& rng, int n) { return static_cast<int>(rng() % n); }

struct Builder {
  WorldState w;

  Builder(int width, int height) {
    w.nav.width = width;
    w.nav.height = height;
    w.failure_surfaces = {"Stove"};
  }

  std::string add(const std::string& type, Cell cell) {
    int& next = w.next_ordinal[type];
    if (next == 0) next = 1;  // instance ids are 1-based
    int ord = next++;
    ObjectInstance o;
    o.type = type;
    o.ordinal = ord;
    o.id = type + "_" + std::to_string(ord);
    o.cell = cell;
    w.instances[o.id] = o;
    return o.id;
  }

  std::string fixture(const std::string& type, Cell cell) {
    w.nav.blocked.insert(cell);
    return add(type, cell);
  }

  std::string add_in(const std::string& type, const std::string& container) {
    ObjectInstance* c = w.find(container);
    std::string id = add(type, c->cell);
    w.find(id)->state.contained_in = container;
    insert_content_sorted(w.find(container)->state.contents, id);
    return id;
  }
};

// Layout variants 0..2 are the "seen" kitchens, 3..4 the "unseen" ones.
Builder make_layout(int v) {
  if (v < 3) {
    Builder b(10, 8);
    b.fixture("CounterTop", {1, 0});
    b.fixture("Sink", {2, 0});
    b.fixture("Faucet", {3, 0});
    b.fixture("Stove", {4, 0});
    b.fixture("CounterTop", {5, 0});
    if (v == 1) {
      b.fixture("CoffeeMachine", {6, 0});
      b.fixture("Microwave", {7, 0});
    } else {
      b.fixture("Microwave", {6, 0});
      b.fixture("CoffeeMachine", {7, 0});
    }
    b.fixture("CounterTop", {8, 0});
    b.fixture("Fridge", {0, 3});
    b.fixture("Cabinet", {0, 5});
    b.fixture("Drawer", {9, 3});
    b.fixture("DiningTable", {9, 5});
    b.fixture("Plant", {v == 2 ? 6 : 2, 7});
    b.w.agent_cell = {v == 2 ? 5 : 4, 4};
    return b;
  }
  Builder b(12, 6);
  b.fixture("Fridge", {0, 1});
  b.fixture("Sink", {0, 3});
  b.fixture("Faucet", {0, 4});
  b.fixture("CounterTop", {2, 5});
  b.fixture("Stove", {3, 5});
  b.fixture("CounterTop", {4, 5});
  if (v == 4) {
    b.fixture("CoffeeMachine", {5, 5});
    b.fixture("Microwave", {6, 5});
  } else {
    b.fixture("Microwave", {5, 5});
    b.fixture("CoffeeMachine", {6, 5});
  }
  b.fixture("CounterTop", {7, 5});
  b.fixture("Cabinet", {8, 5});
  b.fixture("Drawer", {9, 5});
  b.fixture("DiningTable", {11, 2});
  b.fixture("Plant", {11, 4});
  b.w.agent_cell = {v == 4 ? 2 : 5, 2};
  return b;
}

std::vector<std::string> counter_ids(const WorldState& w) {
  std::vector<std::string> out;
  for (const auto& [id, obj] : w.instances)
    if (obj.type == "CounterTop" || obj.type == "DiningTable")
      out.push_back(id);
  std::sort(out.begin(), out.end(), id_order);
  return out;
}

// Puts a task object either in the open or hidden inside a closed storage
// receptacle (the dialog then carries a location hint for it).
std::string place_movable(Builder& b, Rng& rng, const std::string& type,
                          bool allow_hidden) {
  if (allow_hidden && pick(rng, 3) == 0) {
    const char* storage = pick(rng, 2) == 0 ? "Fridge_1" : "Cabinet_1";
    if (b.w.find(storage)) return b.add_in(type, storage);
  }
  auto spots = counter_ids(b.w);
  return b.add_in(type, spots[static_cast<std::size_t>(pick(
                       rng, static_cast<int>(spots.size())))]);
}

void add_distractors(Builder& b, Rng& rng, const TaskSpec& task) {
  std::vector<std::string> relevant = task_relevant_types(task);
  const std::vector<std::string> pool = {"Fork", "Bowl", "Cup",
                                         "Mug",  "Tomato"};
  int want = 1 + pick(rng, 2);
  for (const std::string& type : pool) {
    if (want == 0) break;
    bool used = std::find(relevant.begin(), relevant.end(), type) !=
                    relevant.end() ||
                type == task.x || type == task.y;
    if (used) continue;
    bool present = false;
    for (const auto& [id, obj] : b.w.instances)
      if (obj.type == type) present = true;
    if (present) continue;
    if (pick(rng, 2) == 0) continue;
    place_movable(b, rng, type, false);
    --want;
  }
}

TaskSpec populate(Builder& b, Rng& rng, int family_idx) {
  TaskSpec t;
  t.family = kAllFamilies[static_cast<std::size_t>(family_idx)];
  switch (t.family) {
    case TaskFamily::Coffee: {
      std::string mug = place_movable(b, rng, "Mug", true);
      if (pick(rng, 2) == 0) b.w.find(mug)->state.is_dirty = true;
      break;
    }
    case TaskFamily::WaterPlant:
      place_movable(b, rng, "Cup", true);
      break;
    case TaskFamily::PlateOfToast:
      place_movable(b, rng, "Bread", true);
      place_movable(b, rng, "Knife", false);
      place_movable(b, rng, "Plate", false);
      break;
    case TaskFamily::CleanAllX: {
      const std::vector<std::string> pool = {"Plate", "Bowl", "Mug", "Cup"};
      t.x = pool[static_cast<std::size_t>(pick(rng, 4))];
      int k = 1 + pick(rng, 2);
      for (int i = 0; i < k; ++i) {
        std::string id = place_movable(b, rng, t.x, false);
        b.w.find(id)->state.is_dirty = true;
      }
      break;
    }
    case TaskFamily::PutAllXOnY: {
      const std::vector<std::pair<std::string, std::string>> pairs = {
          {"Fork", "Drawer"},
          {"Mug", "Cabinet"},
          {"Plate", "DiningTable"},
          {"Cup", "Cabinet"}};
      auto [x, y] = pairs[static_cast<std::size_t>(pick(rng, 4))];
      t.x = x;
      t.y = y;
      int k = 1 + pick(rng, 2);
      for (int i = 0; i < k; ++i) place_movable(b, rng, t.x, false);
      break;
    }
    case TaskFamily::PutAllXInOneY: {
      t.x = pick(rng, 2) == 0 ? "Fork" : "Cup";
      t.y = "Bowl";
      place_movable(b, rng, "Bowl", false);
      int k = 1 + pick(rng, 2);
      for (int i = 0; i < k; ++i) place_movable(b, rng, t.x, false);
      break;
    }
    case TaskFamily::NSlicesOfXInY: {
      const std::vector<std::string> xs = {"Bread", "Tomato", "Potato"};
      t.x = xs[static_cast<std::size_t>(pick(rng, 3))];
      t.y = pick(rng, 2) == 0 ? "Plate" : "Bowl";
      t.n = 1 + pick(rng, 3);
      place_movable(b, rng, t.x, true);
      place_movable(b, rng, "Knife", false);
      place_movable(b, rng, t.y, false);
      break;
    }
    case TaskFamily::NCookedSlicesOfXInY: {
      t.x = pick(rng, 2) == 0 ? "Potato" : "Bread";
      t.y = "Plate";
      t.n = 1 + pick(rng, 2);
      place_movable(b, rng, t.x, true);
      place_movable(b, rng, "Knife", false);
      place_movable(b, rng, "Plate", false);
      break;
    }
    case TaskFamily::BoilX: {
      t.x = "Potato";
      std::string pot = b.add_in("Pot", "Stove_1");
      if (pick(rng, 2) == 0) b.w.find(pot)->state.fill = Fill::Water;
      place_movable(b, rng, "Potato", false);
      place_movable(b, rng, "Cup", false);
      break;
    }
    case TaskFamily::Salad:
      place_movable(b, rng, "Tomato", false);
      place_movable(b, rng, "Potato", false);
      place_movable(b, rng, "Knife", false);
      place_movable(b, rng, "Plate", false);
      break;
    case TaskFamily::Sandwich:
      place_movable(b, rng, "Bread", false);
      place_movable(b, rng, "Tomato", false);
      place_movable(b, rng, "Knife", false);
      place_movable(b, rng, "Plate", false);
      break;
    case TaskFamily::Breakfast:
      place_movable(b, rng, "Mug", false);
      place_movable(b, rng, "Bread", false);
      place_movable(b, rng, "Knife", false);
      place_movable(b, rng, "Plate", false);
      break;
  }
  return t;
}

}  // namespace

std::string_view to_string(SceneProfile p) {
  switch (p) {
    case SceneProfile::Seen:
      return "seen";
    case SceneProfile::Unseen:
      return "unseen";
    case SceneProfile::Ambiguity:
      return "ambiguity";
  }
  return "?";
}

GeneratedScene generate_scene(std::uint64_t seed, SceneProfile profile,
                              const std::string& id) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(profile));
  GeneratedScene out;
  out.id = id;
  out.profile = profile;
  if (profile == SceneProfile::Ambiguity) {
    Builder b = make_layout(0);
    // Agent starts beside the fridge; the duplicate vessel inside it is the
    // closest instance of its type but cannot be reached without opening.
    b.w.agent_cell = {1, 3};
    bool coffee = pick(rng, 2) == 0;
    out.task.family = coffee ? TaskFamily::Coffee : TaskFamily::WaterPlant;
    std::string vessel = coffee ? "Mug" : "Cup";
    b.add_in(vessel, "CounterTop_3");  // the far visible one, at (8,0)
    b.add_in(vessel, "Fridge_1");
    out.world = b.w;
    return out;
  }
  int variant = profile == SceneProfile::Seen ? pick(rng, 3) : 3 + pick(rng, 2);
  Builder b = make_layout(variant);
  int family_idx = pick(rng, static_cast<int>(kAllFamilies.size()));
  out.task = populate(b, rng, family_idx);
  add_distractors(b, rng, out.task);
  out.world = b.w;
  return out;
}

namespace {

// Counts instances per (type, state signature) so instance identity never
// matters for goal checking.
std::map<std::string, std::pair<GoalCondition, int>> signature_counts(
    const WorldState& w) {
  const Catalog& cat = Catalog::instance();
  std::map<std::string, std::pair<GoalCondition, int>> out;
  for (const auto& [id, obj] : w.instances) {
    if (obj.held) continue;
    const ObjectType& t = cat.at(obj.type);
    GoalCondition g;
    g.kind = GoalCondition::Kind::ExistsK;
    g.subject = obj.type;
    g.sliced = obj.state.is_sliced;
    g.cooked = obj.state.is_cooked;
    if (obj.state.is_cooked) g.cook_method = obj.state.cook_method;
    if (t.cleanable) g.clean = !obj.state.is_dirty;
    if (t.toggleable) g.toggled = obj.state.is_toggled_on;
    if (t.openable) g.open = obj.state.is_open;
    if (t.fillable) g.fill = obj.state.fill;
    if (obj.state.contained_in)
      g.in_type = w.find(*obj.state.contained_in)->type;
    std::ostringstream key;
    key << obj.type << "|s" << *g.sliced << "|c" << *g.cooked << "|m"
        << (g.cook_method ? static_cast<int>(*g.cook_method) : -1) << "|d"
        << (g.clean ? static_cast<int>(*g.clean) : -1) << "|t"
        << (g.toggled ? static_cast<int>(*g.toggled) : -1) << "|o"
        << (g.open ? static_cast<int>(*g.open) : -1) << "|f"
        << (g.fill ? static_cast<int>(*g.fill) : -1) << "|in"
        << g.in_type.value_or("");
    auto it = out.find(key.str());
    if (it == out.end())
      out.emplace(key.str(), std::make_pair(g, 1));
    else
      it->second.second++;
  }
  return out;
}

std::vector<GoalCondition> delta_goals(const WorldState& before,
                                       const WorldState& after) {
  auto b = signature_counts(before);
  auto a = signature_counts(after);
  std::vector<GoalCondition> goals;
  for (auto& [key, entry] : a) {
    auto it = b.find(key);
    int prior = it == b.end() ? 0 : it->second.second;
    if (entry.second > prior) {
      entry.first.count = entry.second;
      goals.push_back(entry.first);
    }
  }
  return goals;
}

Plan to_by_type(const Plan& ids) {
  Plan out;
  for (const PlanStep& s : ids.steps) {
    if (s.action == Action::Stop || s.object_ref.kind != ObjectRef::Kind::ById)
      out.steps.push_back(s);
    else
      out.steps.push_back(
          {s.action, ObjectRef::by_type(split_id(s.object_ref.name).first)});
  }
  return out;
}

}  // namespace

SlicedDemo slice_demo(const GeneratedScene& scene, std::uint64_t dialog_seed) {
  SlicedDemo out;
  out.scene = scene;
  out.dialog = render_dialog(scene.task, scene.world, dialog_seed);
  out.demo = plan_demonstration(scene.world, scene.task);

  // Replay the trajectory, snapshotting the world at each resume point.
  std::vector<std::size_t> cuts = {0};
  for (std::size_t b : out.demo.subtask_boundaries)
    if (b > cuts.back() && b < out.demo.plan_ids.without_stop().size())
      cuts.push_back(b);

  std::vector<WorldState> snapshots;         // world before cut-th plan step
  std::vector<std::size_t> cut_event_index;  // events completed at the cut
  WorldState w = scene.world;
  std::size_t steps_done = 0;
  std::size_t next_cut = 0;
  for (std::size_t e = 0; e <= out.demo.trajectory.events.size(); ++e) {
    if (next_cut < cuts.size() && steps_done == cuts[next_cut]) {
      snapshots.push_back(w);
      cut_event_index.push_back(e);
      ++next_cut;
    }
    if (e == out.demo.trajectory.events.size()) break;
    const TrajEvent& ev = out.demo.trajectory.events[e];
    if (ev.kind == LowLevelKind::Stop) continue;
    if (is_navigation(ev.kind)) {
      auto path = shortest_path(w, *ev.target);
      if (path && !path->empty()) w.agent_cell = path->back();
      continue;
    }
    auto [next, outcome] = apply_interaction(w, interaction_action(ev.kind),
                                             *ev.target);
    if (!outcome.success)
      throw std::runtime_error("demonstration replay failed at event " +
                               std::to_string(e));
    w = std::move(next);
    ++steps_done;
  }
  if (snapshots.size() != cuts.size())
    throw std::runtime_error("resume point past the end of the plan");

  const auto& steps = out.demo.plan_ids.steps;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    EDHInstance inst;
    inst.id = scene.id + ".e" + std::to_string(c);
    inst.initial_world = snapshots[c];
    inst.dialog = out.dialog;
    inst.history.events.assign(
        out.demo.trajectory.events.begin(),
        out.demo.trajectory.events.begin() +
            static_cast<std::ptrdiff_t>(cut_event_index[c]));
    inst.reference_plan_ids.steps.assign(
        steps.begin() + static_cast<std::ptrdiff_t>(cuts[c]), steps.end());
    inst.reference_plan = to_by_type(inst.reference_plan_ids);
    inst.goals = delta_goals(snapshots[c], out.demo.final_world);
    inst.task = scene.task;
    out.instances.push_back(std::move(inst));
  }
  return out;
}

const std::vector<std::string>& dataset_splits() {
  static const std::vector<std::string> splits = {
      "train",
      "divided_val_seen",
      "divided_val_unseen",
      "divided_test_seen",
      "divided_test_unseen",
      "ambiguity"};
  return splits;
}

void write_dataset(const std::filesystem::path& dir, const GenConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "scenes");
  fs::create_directories(dir / "demos");
  fs::create_directories(dir / "edh");

  auto profile_of = [](const std::string& split) {
    if (split == "ambiguity") return SceneProfile::Ambiguity;
    if (split.ends_with("unseen")) return SceneProfile::Unseen;
    return SceneProfile::Seen;
  };
  auto count_of = [&](const std::string& split) {
    if (split == "train") return config.train;
    if (split == "ambiguity") return config.ambiguity;
    return config.eval_per_split;
  };

  std::uint64_t scene_counter = 0;
  for (const std::string& split : dataset_splits()) {
    std::ofstream list(dir / (split + ".list"));
    if (!list) throw std::runtime_error("cannot write split list " + split);
    SceneProfile profile = profile_of(split);
    for (int i = 0; i < count_of(split); ++i, ++scene_counter) {
      std::uint64_t seed = config.seed * 1000003ULL + scene_counter;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s_%04d", split.c_str(), i);
      GeneratedScene scene = generate_scene(seed, profile, buf);
      SlicedDemo sliced = slice_demo(scene, seed);

      {
        std::ofstream f(dir / "scenes" / (scene.id + ".scene"));
        f << world_to_json(scene.world).dump(2) << "\n";
      }
      {
        nlohmann::ordered_json dj;
        dj["id"] = scene.id;
        dj["profile"] = std::string(to_string(scene.profile));
        dj["task"] = task_to_json(scene.task);
        dj["dialog"] = sliced.dialog;
        dj["trajectory"] = trajectory_to_json(sliced.demo.trajectory);
        dj["plan"] = format_plan(sliced.demo.plan_ids);
        dj["subtask_boundaries"] = sliced.demo.subtask_boundaries;
        std::ofstream f(dir / "demos" / (scene.id + ".demo"));
        f << dj.dump(2) << "\n";
      }
      for (const EDHInstance& inst : sliced.instances) {
        std::ofstream f(dir / "edh" / (inst.id + ".edh"));
        f << edh_to_json(inst).dump(2) << "\n";
        list << inst.id << "\n";
      }
    }
  }
}

std::vector<EDHInstance> load_split(const std::filesystem::path& dir,
                                    const std::string& split) {
  std::ifstream list(dir / (split + ".list"));
  if (!list)
    throw std::runtime_error("no such split list: " +
                             (dir / (split + ".list")).string());
  std::vector<EDHInstance> out;
  std::string id;
  while (std::getline(list, id)) {
    if (id.empty()) continue;
    out.push_back(load_edh_file((dir / "edh" / (id + ".edh")).string()));
  }
  return out;
}

}  // namespace planbench
