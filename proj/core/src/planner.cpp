#include "planbench/planner.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "planbench/catalog.hpp"

namespace planbench {

namespace {

class Planner {
 public:
  Planner(const WorldState& scene, const TaskSpec& task)
      : w_(scene), task_(task) {}

  Demonstration run();

 private:
  WorldState w_;
  TaskSpec task_;
  Trajectory traj_;
  std::size_t steps_ = 0;
  std::vector<std::size_t> boundaries_;

  void boundary() { boundaries_.push_back(steps_); }

  int approach_distance(const std::vector<int>& dist, Cell target) const {
    const NavGraph& nav = w_.nav;
    int best = INT_MAX;
    for (int y = 0; y < nav.height; ++y)
      for (int x = 0; x < nav.width; ++x) {
        if (manhattan({x, y}, target) > nav.interaction_range) continue;
        int d = dist[static_cast<std::size_t>(y) * nav.width + x];
        if (d >= 0) best = std::min(best, d);
      }
    return best;
  }

  void navigate(const std::string& id) {
    auto path = shortest_path(w_, id);
    if (!path) throw PlannerError("no path to " + id);
    if (!path->empty()) {
      w_.agent_cell = path->back();
      traj_.events.push_back({LowLevelKind::NavigateTo, id});
    }
  }

  void interact(Action a, const std::string& id) {
    navigate(id);
    auto [next, outcome] = apply_interaction(w_, a, id);
    if (!outcome.success)
      throw PlannerError(std::string(to_string(a)) + " " + id + " failed: " +
                         std::string(to_string(outcome.failure_reason)));
    w_ = std::move(next);
    traj_.events.push_back({low_level_of(a), id});
    ++steps_;
  }

  bool has_type(const std::string& type) const {
    for (const auto& [id, obj] : w_.instances)
      if (obj.type == type) return true;
    return false;
  }

  // Closest instance of a type, preferring ones not shut inside a closed
  // receptacle. Ties break on ordinal.
  std::string choose(const std::string& type,
                     const std::set<std::string>& exclude = {}) const {
    if (w_.held) {
      const ObjectInstance* h = w_.find(*w_.held);
      if (h && h->type == type && !exclude.count(h->id)) return h->id;
    }
    std::vector<int> dist = grid_distances(w_.nav, w_.agent_cell);
    const ObjectInstance* best = nullptr;
    bool best_occ = true;
    int best_d = INT_MAX;
    for (const auto& [id, obj] : w_.instances) {
      if (obj.type != type || exclude.count(id)) continue;
      bool occ = w_.occluded(id);
      int d = approach_distance(dist, w_.effective_cell(id));
      bool better;
      if (!best)
        better = true;
      else if (occ != best_occ)
        better = !occ;
      else if (d != best_d)
        better = d < best_d;
      else
        better = obj.ordinal < best->ordinal;
      if (better) {
        best = &obj;
        best_occ = occ;
        best_d = d;
      }
    }
    if (!best) throw PlannerError("no instance of " + type);
    return best->id;
  }

  void open_receptacle(const std::string& id) {
    const ObjectInstance* c = w_.find(id);
    if (c->state.is_toggled_on) interact(Action::ToggleOff, id);
    if (!w_.find(id)->state.is_open) interact(Action::Open, id);
  }

  // Opens every closed ancestor, outermost first.
  void uncover(const std::string& id) {
    std::vector<std::string> chain;
    auto cur = w_.find(id)->state.contained_in;
    while (cur) {
      const ObjectInstance* c = w_.find(*cur);
      if (Catalog::instance().at(c->type).openable && !c->state.is_open)
        chain.push_back(*cur);
      cur = c->state.contained_in;
    }
    std::reverse(chain.begin(), chain.end());
    for (const std::string& cid : chain) open_receptacle(cid);
  }

  void fetch(const std::string& id) {
    uncover(id);
    interact(Action::Pickup, id);
  }

  std::string counter_for(const std::set<std::string>& exclude = {}) const {
    return choose("CounterTop", exclude);
  }

  // Puts the held object down on the nearest counter.
  std::string stow() {
    std::string c = counter_for();
    interact(Action::Place, c);
    return c;
  }

  // Places the held object into a receptacle, opening it and clearing space
  // first when needed. Eviction prefers objects of a different type than the
  // one being placed so collection tasks never undo their own work.
  void put(const std::string& recep) {
    std::string item = *w_.held;
    std::string item_type = w_.find(item)->type;
    uncover(recep);
    const ObjectType& rt = Catalog::instance().at(w_.find(recep)->type);
    if (rt.openable) open_receptacle(recep);
    int guard = 0;
    while (static_cast<int>(w_.find(recep)->state.contents.size()) >=
           rt.capacity) {
      if (++guard > rt.capacity + 1)
        throw PlannerError("cannot clear space in " + recep);
      const auto& contents = w_.find(recep)->state.contents;
      std::string victim = contents.front();
      for (const std::string& c : contents)
        if (w_.find(c)->type != item_type) {
          victim = c;
          break;
        }
      std::string counter = counter_for({recep});
      interact(Action::Place, counter);  // stow the item we are carrying
      interact(Action::Pickup, victim);
      interact(Action::Place, counter);
      interact(Action::Pickup, item);
    }
    interact(Action::Place, recep);
  }

  // Runs the held object through the sink: ends held, clean, filled with
  // water.
  void sink_wash() {
    std::string item = *w_.held;
    put(choose("Sink"));
    std::string faucet = choose("Faucet");
    interact(Action::ToggleOn, faucet);
    interact(Action::ToggleOff, faucet);
    interact(Action::Pickup, item);
  }

  // Cooks the held object in the microwave; ends holding it again.
  void microwave_cook() {
    std::string item = *w_.held;
    std::string mw = choose("Microwave");
    put(mw);
    interact(Action::Close, mw);
    interact(Action::ToggleOn, mw);
    interact(Action::ToggleOff, mw);
    interact(Action::Open, mw);
    interact(Action::Pickup, item);
    interact(Action::Close, mw);
  }

  // Slices one instance of a sliceable type on a counter; returns the new
  // slice ids in canonical order.
  std::vector<std::string> make_slices(const std::string& x_type) {
    std::string x = choose(x_type);
    if (w_.held) stow();
    if (w_.find(x)->state.contained_in &&
        w_.find(*w_.find(x)->state.contained_in)->type != "CounterTop") {
      fetch(x);
      stow();
    } else if (w_.occluded(x)) {
      uncover(x);
    }
    std::set<std::string> before;
    for (const auto& [id, obj] : w_.instances) before.insert(id);
    std::string knife = choose("Knife");
    fetch(knife);
    interact(Action::Slice, x);
    stow();  // knife down
    std::vector<std::string> slices;
    for (const auto& [id, obj] : w_.instances)
      if (!before.count(id)) slices.push_back(id);
    std::sort(slices.begin(), slices.end(), id_order);
    return slices;
  }

  std::string water_vessel() const {
    if (has_type("Cup")) return "Cup";
    if (has_type("Mug")) return "Mug";
    throw PlannerError("no vessel to carry water");
  }

  void do_coffee() {
    std::string mug = choose("Mug");
    fetch(mug);
    if (w_.find(mug)->state.is_dirty) sink_wash();
    std::string cm = choose("CoffeeMachine");
    put(cm);
    interact(Action::ToggleOn, cm);
    interact(Action::ToggleOff, cm);
    boundary();
  }

  void do_water_plant() {
    fetch(choose(water_vessel()));
    sink_wash();
    interact(Action::Pour, choose("Plant"));
    stow();
    boundary();
  }

  void do_toast() {
    auto slices = make_slices("Bread");
    fetch(slices.front());
    microwave_cook();
    put(choose("Plate"));
    boundary();
  }

  void do_clean_all() {
    std::vector<std::string> targets;
    for (const auto& [id, obj] : w_.instances)
      if (obj.type == task_.x) targets.push_back(id);
    if (targets.empty()) throw PlannerError("no instance of " + task_.x);
    std::sort(targets.begin(), targets.end(), id_order);
    for (const std::string& id : targets) {
      if (!w_.find(id)->state.is_dirty) {
        boundary();
        continue;
      }
      fetch(id);
      sink_wash();
      stow();
      boundary();
    }
  }

  void do_put_all() {
    std::vector<std::string> targets;
    for (const auto& [id, obj] : w_.instances)
      if (obj.type == task_.x) targets.push_back(id);
    if (targets.empty()) throw PlannerError("no instance of " + task_.x);
    std::sort(targets.begin(), targets.end(), id_order);
    std::string y = choose(task_.y);
    for (const std::string& id : targets) {
      const auto& in = w_.find(id)->state.contained_in;
      bool done = task_.family == TaskFamily::PutAllXInOneY
                      ? in == y
                      : (in && w_.find(*in)->type == task_.y);
      if (done) {
        boundary();
        continue;
      }
      fetch(id);
      put(y);
      boundary();
    }
  }

  void do_n_slices(int n, const std::string& x, const std::string& y_id,
                   bool cooked) {
    std::vector<std::string> slices;
    while (static_cast<int>(slices.size()) < n) {
      auto more = make_slices(x);
      slices.insert(slices.end(), more.begin(), more.end());
    }
    for (int i = 0; i < n; ++i) {
      fetch(slices[static_cast<std::size_t>(i)]);
      if (cooked) microwave_cook();
      put(y_id);
    }
    boundary();
  }

  void do_boil() {
    std::string pot;
    for (const auto& [id, obj] : w_.instances) {
      if (obj.type != "Pot" || !obj.state.contained_in) continue;
      if (w_.find(*obj.state.contained_in)->type == "Stove") {
        pot = id;
        break;
      }
    }
    if (pot.empty()) throw PlannerError("boil task needs a pot on the stove");
    if (w_.find(pot)->state.fill != Fill::Water) {
      fetch(choose(water_vessel()));
      sink_wash();
      interact(Action::Pour, pot);
      stow();
    }
    fetch(choose(task_.x));
    put(pot);
    std::string stove = *w_.find(pot)->state.contained_in;
    interact(Action::ToggleOn, stove);
    interact(Action::ToggleOff, stove);
    boundary();
  }

  void dispatch() {
    switch (task_.family) {
      case TaskFamily::Coffee:
        do_coffee();
        break;
      case TaskFamily::WaterPlant:
        do_water_plant();
        break;
      case TaskFamily::PlateOfToast:
        do_toast();
        break;
      case TaskFamily::CleanAllX:
        do_clean_all();
        break;
      case TaskFamily::PutAllXOnY:
      case TaskFamily::PutAllXInOneY:
        do_put_all();
        break;
      case TaskFamily::NSlicesOfXInY:
        do_n_slices(task_.n, task_.x, choose(task_.y), false);
        break;
      case TaskFamily::NCookedSlicesOfXInY:
        do_n_slices(task_.n, task_.x, choose(task_.y), true);
        break;
      case TaskFamily::BoilX:
        do_boil();
        break;
      case TaskFamily::Salad: {
        std::string plate = choose("Plate");
        do_n_slices(1, "Tomato", plate, false);
        do_n_slices(1, "Potato", plate, true);
        break;
      }
      case TaskFamily::Sandwich: {
        std::string plate = choose("Plate");
        do_n_slices(2, "Bread", plate, true);
        do_n_slices(1, "Tomato", plate, false);
        break;
      }
      case TaskFamily::Breakfast:
        do_coffee();
        do_toast();
        break;
    }
  }
};

Demonstration Planner::run() {
  Demonstration d;
  d.initial_world = w_;
  dispatch();
  traj_.events.push_back({LowLevelKind::Stop, std::nullopt});
  for (const GoalCondition& g : goal_conditions(task_, d.initial_world))
    if (!check_predicate(w_, g))
      throw PlannerError("plan finished with an unmet goal for " + g.subject);
  d.trajectory = traj_;
  d.plan_ids = compile_plan(traj_, CompileMode::ById);
  d.subtask_boundaries = boundaries_;
  d.final_world = w_;
  return d;
}

}  // namespace

Demonstration plan_demonstration(const WorldState& scene,
                                 const TaskSpec& task) {
  return Planner(scene, task).run();
}

}  // namespace planbench
