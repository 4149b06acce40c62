#include "planbench/world.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <stdexcept>

namespace planbench {

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "None";
    case FailureReason::InvalidPair: return "InvalidPair";
    case FailureReason::PrerequisiteMissing: return "PrerequisiteMissing";
    case FailureReason::NotInRange: return "NotInRange";
    case FailureReason::Occluded: return "Occluded";
    case FailureReason::CapacityExceeded: return "CapacityExceeded";
    case FailureReason::SurfaceRejected: return "SurfaceRejected";
    case FailureReason::NoSuchObject: return "NoSuchObject";
  }
  return "?";
}

std::pair<std::string, int> split_id(const std::string& id) {
  auto pos = id.rfind('_');
  if (pos == std::string::npos) return {id, 0};
  return {id.substr(0, pos), std::atoi(id.c_str() + pos + 1)};
}

bool id_order(const std::string& a, const std::string& b) {
  auto [ta, oa] = split_id(a);
  auto [tb, ob] = split_id(b);
  if (ta != tb) return ta < tb;
  return oa < ob;
}

void insert_content_sorted(std::vector<std::string>& contents,
                           const std::string& id) {
  auto it = std::lower_bound(contents.begin(), contents.end(), id, id_order);
  contents.insert(it, id);
}

const ObjectInstance* WorldState::find(const std::string& id) const {
  auto it = instances.find(id);
  return it == instances.end() ? nullptr : &it->second;
}

ObjectInstance* WorldState::find(const std::string& id) {
  auto it = instances.find(id);
  return it == instances.end() ? nullptr : &it->second;
}

Cell WorldState::effective_cell(const std::string& id) const {
  const ObjectInstance* obj = find(id);
  if (!obj) throw std::runtime_error("effective_cell: no instance " + id);
  while (obj->state.contained_in) {
    const ObjectInstance* outer = find(*obj->state.contained_in);
    if (!outer) break;
    obj = outer;
  }
  return obj->cell;
}

bool WorldState::occluded(const std::string& id) const {
  const ObjectInstance* obj = find(id);
  if (!obj) return false;
  while (obj->state.contained_in) {
    const ObjectInstance* outer = find(*obj->state.contained_in);
    if (!outer) break;
    if (Catalog::instance().at(outer->type).openable && !outer->state.is_open)
      return true;
    obj = outer;
  }
  return false;
}

std::vector<int> grid_distances(const NavGraph& nav, Cell from) {
  std::vector<int> dist(static_cast<std::size_t>(nav.width) * nav.height, -1);
  auto at = [&](Cell c) -> int& { return dist[c.y * nav.width + c.x]; };
  if (!nav.passable(from)) return dist;
  std::deque<Cell> queue{from};
  at(from) = 0;
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    const Cell nbrs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y},
                          {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (Cell n : nbrs) {
      if (nav.passable(n) && at(n) < 0) {
        at(n) = at(c) + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

namespace {

// Shortest-path distance from the agent to within interaction_range of the
// instance's effective cell; INT_MAX if unreachable.
int approach_distance(const WorldState& world, const std::vector<int>& dist,
                      const std::string& id) {
  const ObjectInstance* obj = world.find(id);
  if (obj->held) return 0;
  Cell eff = world.effective_cell(id);
  int best = INT_MAX;
  const NavGraph& nav = world.nav;
  int r = nav.interaction_range;
  for (int dx = -r; dx <= r; ++dx) {
    for (int dy = -r + std::abs(dx); dy <= r - std::abs(dx); ++dy) {
      Cell c{eff.x + dx, eff.y + dy};
      if (!nav.passable(c)) continue;
      int d = dist[c.y * nav.width + c.x];
      if (d >= 0) best = std::min(best, d);
    }
  }
  return best;
}

bool in_range(const WorldState& world, const std::string& id) {
  const ObjectInstance* obj = world.find(id);
  if (obj->held) return true;
  return manhattan(world.agent_cell, world.effective_cell(id)) <=
         world.nav.interaction_range;
}

// Appliance effects that follow from the current toggle states. Runs after
// every successful interaction so states stay consistent.
void propagate_appliances(WorldState& world) {
  const Catalog& cat = Catalog::instance();
  for (auto& [id, obj] : world.instances) {
    if (!obj.state.is_toggled_on) continue;
    if (obj.type == "Stove") {
      for (const std::string& cid : obj.state.contents) {
        ObjectInstance* c = world.find(cid);
        if (!c) continue;
        if (cat.at(c->type).cookable && !c->state.is_cooked) {
          c->state.is_cooked = true;
          c->state.cook_method = CookMethod::Stove;
        }
        if (c->type == "Pot" && c->state.fill == Fill::Water) {
          for (const std::string& pid : c->state.contents) {
            ObjectInstance* p = world.find(pid);
            if (p && cat.at(p->type).cookable) {
              p->state.is_cooked = true;
              p->state.cook_method = CookMethod::Boil;
            }
          }
        }
      }
    } else if (obj.type == "Microwave") {
      if (!obj.state.is_open) {
        for (const std::string& cid : obj.state.contents) {
          ObjectInstance* c = world.find(cid);
          if (c && cat.at(c->type).cookable && !c->state.is_cooked) {
            c->state.is_cooked = true;
            c->state.cook_method = CookMethod::Microwave;
          }
        }
      }
    } else if (obj.type == "CoffeeMachine") {
      for (const std::string& cid : obj.state.contents) {
        ObjectInstance* c = world.find(cid);
        if (c && cat.at(c->type).fillable) c->state.fill = Fill::Coffee;
      }
    } else if (obj.type == "Faucet") {
      for (auto& [sid, sink] : world.instances) {
        if (sink.type != "Sink") continue;
        for (const std::string& cid : sink.state.contents) {
          ObjectInstance* c = world.find(cid);
          if (!c) continue;
          const ObjectType& t = cat.at(c->type);
          if (t.fillable) c->state.fill = Fill::Water;
          if (t.cleanable) c->state.is_dirty = false;
        }
      }
    }
  }
}

void detach(WorldState& world, ObjectInstance& obj) {
  if (obj.state.contained_in) {
    if (ObjectInstance* outer = world.find(*obj.state.contained_in)) {
      auto& cs = outer->state.contents;
      cs.erase(std::remove(cs.begin(), cs.end(), obj.id), cs.end());
    }
    obj.state.contained_in.reset();
  }
}

}  // namespace

std::optional<std::string> closest_instance(const WorldState& world,
                                            const std::string& type_name) {
  std::vector<int> dist = grid_distances(world.nav, world.agent_cell);
  const ObjectInstance* best = nullptr;
  int best_dist = 0;
  for (const auto& [id, obj] : world.instances) {
    if (obj.type != type_name) continue;
    int d = approach_distance(world, dist, id);
    if (!best || d < best_dist ||
        (d == best_dist && obj.ordinal < best->ordinal)) {
      best = &obj;
      best_dist = d;
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

std::optional<std::vector<Cell>> shortest_path(const WorldState& world,
                                               const std::string& target_id) {
  const ObjectInstance* obj = world.find(target_id);
  if (!obj) return std::nullopt;
  if (obj->held) return std::vector<Cell>{};
  Cell eff = world.effective_cell(target_id);
  const NavGraph& nav = world.nav;
  if (manhattan(world.agent_cell, eff) <= nav.interaction_range)
    return std::vector<Cell>{};

  std::vector<int> dist(static_cast<std::size_t>(nav.width) * nav.height, -1);
  std::vector<Cell> parent(dist.size());
  auto idx = [&](Cell c) { return static_cast<std::size_t>(c.y) * nav.width + c.x; };
  std::deque<Cell> queue{world.agent_cell};
  if (!nav.passable(world.agent_cell)) return std::nullopt;
  dist[idx(world.agent_cell)] = 0;
  std::optional<Cell> goal;
  while (!queue.empty() && !goal) {
    Cell c = queue.front();
    queue.pop_front();
    const Cell nbrs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y},
                          {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (Cell n : nbrs) {
      if (!nav.passable(n) || dist[idx(n)] >= 0) continue;
      dist[idx(n)] = dist[idx(c)] + 1;
      parent[idx(n)] = c;
      if (manhattan(n, eff) <= nav.interaction_range) {
        goal = n;
        break;
      }
      queue.push_back(n);
    }
  }
  if (!goal) return std::nullopt;
  std::vector<Cell> path;
  for (Cell c = *goal; c != world.agent_cell; c = parent[idx(c)])
    path.push_back(c);
  std::reverse(path.begin(), path.end());
  return path;
}

std::pair<WorldState, InteractionOutcome> apply_interaction(
    const WorldState& world, Action action, const std::string& target_id) {
  const Catalog& cat = Catalog::instance();
  auto fail = [&](FailureReason r) {
    return std::make_pair(world, InteractionOutcome::fail(r));
  };

  const ObjectInstance* target = world.find(target_id);
  if (!target) return fail(FailureReason::NoSuchObject);
  const ObjectType& type = cat.at(target->type);
  if (!AffordanceTable::instance().valid(action, target->type))
    return fail(FailureReason::InvalidPair);
  if (world.occluded(target_id)) return fail(FailureReason::Occluded);
  if (!in_range(world, target_id)) return fail(FailureReason::NotInRange);
  if (target->held && action != Action::Pour)
    return fail(FailureReason::PrerequisiteMissing);

  WorldState out = world;
  ObjectInstance& obj = *out.find(target_id);

  switch (action) {
    case Action::Pickup: {
      if (out.held) return fail(FailureReason::PrerequisiteMissing);
      detach(out, obj);
      obj.held = true;
      out.held = target_id;
      break;
    }
    case Action::Place: {
      if (!out.held) return fail(FailureReason::PrerequisiteMissing);
      if (type.openable && !obj.state.is_open)
        return fail(FailureReason::PrerequisiteMissing);
      if (out.failure_surfaces.count(obj.type))
        return fail(FailureReason::SurfaceRejected);
      if (static_cast<int>(obj.state.contents.size()) >= type.capacity)
        return fail(FailureReason::CapacityExceeded);
      ObjectInstance& item = *out.find(*out.held);
      item.held = false;
      item.cell = out.effective_cell(target_id);
      item.state.contained_in = target_id;
      insert_content_sorted(obj.state.contents, item.id);
      out.held.reset();
      break;
    }
    case Action::Open: {
      if (obj.state.is_open || obj.state.is_toggled_on)
        return fail(FailureReason::PrerequisiteMissing);
      obj.state.is_open = true;
      break;
    }
    case Action::Close: {
      if (!obj.state.is_open) return fail(FailureReason::PrerequisiteMissing);
      obj.state.is_open = false;
      break;
    }
    case Action::ToggleOn: {
      if (obj.state.is_toggled_on) return fail(FailureReason::PrerequisiteMissing);
      if (type.openable && obj.state.is_open)
        return fail(FailureReason::PrerequisiteMissing);
      obj.state.is_toggled_on = true;
      break;
    }
    case Action::ToggleOff: {
      if (!obj.state.is_toggled_on)
        return fail(FailureReason::PrerequisiteMissing);
      obj.state.is_toggled_on = false;
      break;
    }
    case Action::Slice: {
      if (!out.held) return fail(FailureReason::PrerequisiteMissing);
      const ObjectInstance& knife = *out.find(*out.held);
      if (!cat.at(knife.type).knife_class)
        return fail(FailureReason::PrerequisiteMissing);
      std::optional<std::string> container = obj.state.contained_in;
      if (container) {
        const ObjectInstance& c = *out.find(*container);
        int after = static_cast<int>(c.state.contents.size()) - 1 +
                    type.slice_count;
        if (after > cat.at(c.type).capacity)
          return fail(FailureReason::CapacityExceeded);
      }
      Cell cell = obj.cell;
      ObjectState base = obj.state;
      std::string sliced_type = type.sliced_into;
      int n = type.slice_count;
      detach(out, *out.find(target_id));
      out.instances.erase(target_id);
      int& ord = out.next_ordinal[sliced_type];
      if (ord == 0) ord = 1;
      for (int i = 0; i < n; ++i) {
        ObjectInstance slice;
        slice.type = sliced_type;
        slice.ordinal = ord++;
        slice.id = sliced_type + "_" + std::to_string(slice.ordinal);
        slice.cell = cell;
        slice.state.is_sliced = true;
        slice.state.is_cooked = base.is_cooked;
        slice.state.cook_method = base.cook_method;
        slice.state.is_dirty = base.is_dirty;
        slice.state.contained_in = container;
        if (container)
          insert_content_sorted(out.find(*container)->state.contents, slice.id);
        out.instances[slice.id] = slice;
      }
      break;
    }
    case Action::Pour: {
      if (!out.held) return fail(FailureReason::PrerequisiteMissing);
      ObjectInstance& src = *out.find(*out.held);
      if (src.state.fill == Fill::None)
        return fail(FailureReason::PrerequisiteMissing);
      if (src.id == target_id) return fail(FailureReason::PrerequisiteMissing);
      if (obj.type != "Sink" && cat.at(obj.type).fillable)
        obj.state.fill = src.state.fill;
      src.state.fill = Fill::None;
      break;
    }
    case Action::Stop:
      return fail(FailureReason::InvalidPair);
  }

  propagate_appliances(out);
  return {std::move(out), InteractionOutcome::ok()};
}

Observation visible_objects(const WorldState& world) {
  std::vector<int> dist = grid_distances(world.nav, world.agent_cell);
  std::vector<std::pair<int, const ObjectInstance*>> order;
  for (const auto& [id, obj] : world.instances) {
    if (world.occluded(id)) continue;
    int d = obj.held ? -1 : approach_distance(world, dist, id);
    order.push_back({d, &obj});
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second->type != b.second->type) return a.second->type < b.second->type;
    return a.second->ordinal < b.second->ordinal;
  });
  Observation obs;
  for (const auto& [d, obj] : order) {
    ObsEntry e;
    e.id = obj->id;
    e.type = obj->type;
    e.held = obj->held;
    e.is_open = obj->state.is_open;
    e.is_toggled_on = obj->state.is_toggled_on;
    e.is_sliced = obj->state.is_sliced;
    e.is_cooked = obj->state.is_cooked;
    e.is_dirty = obj->state.is_dirty;
    e.fill = obj->state.fill;
    e.contained_in = obj->state.contained_in;
    obs.push_back(std::move(e));
  }
  return obs;
}

}  // namespace planbench
