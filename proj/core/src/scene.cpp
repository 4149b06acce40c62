#include "planbench/scene.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace planbench {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void reject(const std::string& what) {
  throw std::runtime_error("scene spec: " + what);
}

void check_fields(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      reject("unknown field '" + it.key() + "' in " + where);
  }
}

Cell cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2) reject("cell must be [x, y]");
  return Cell{j[0].get<int>(), j[1].get<int>()};
}

nlohmann::ordered_json cell_to(Cell c) {
  return nlohmann::ordered_json::array({c.x, c.y});
}

void apply_state_overrides(ObjectInstance& obj, const json& st) {
  check_fields(st,
               {"open", "toggled", "sliced", "cooked", "cook_method", "dirty",
                "fill"},
               obj.id + ".state");
  if (st.contains("open")) obj.state.is_open = st["open"].get<bool>();
  if (st.contains("toggled")) obj.state.is_toggled_on = st["toggled"].get<bool>();
  if (st.contains("sliced")) obj.state.is_sliced = st["sliced"].get<bool>();
  if (st.contains("cooked")) obj.state.is_cooked = st["cooked"].get<bool>();
  if (st.contains("cook_method")) {
    auto m = cook_method_from_string(st["cook_method"].get<std::string>());
    if (!m) reject("bad cook_method in " + obj.id);
    obj.state.cook_method = *m;
  }
  if (st.contains("dirty")) obj.state.is_dirty = st["dirty"].get<bool>();
  if (st.contains("fill")) {
    auto f = fill_from_string(st["fill"].get<std::string>());
    if (!f) reject("bad fill in " + obj.id);
    obj.state.fill = *f;
  }
}

}  // namespace

WorldState build_world(const json& spec) {
  check_fields(spec, {"grid", "agent_cell", "objects", "failure_surfaces"},
               "scene");
  if (!spec.contains("grid") || !spec.contains("agent_cell") ||
      !spec.contains("objects"))
    reject("missing required field (grid, agent_cell, objects)");

  WorldState world;
  const json& grid = spec["grid"];
  check_fields(grid, {"width", "height", "blocked"}, "grid");
  world.nav.width = grid["width"].get<int>();
  world.nav.height = grid["height"].get<int>();
  if (world.nav.width <= 0 || world.nav.height <= 0) reject("bad grid size");
  if (grid.contains("blocked"))
    for (const json& b : grid["blocked"]) world.nav.blocked.insert(cell_from(b));

  world.agent_cell = cell_from(spec["agent_cell"]);
  if (!world.nav.passable(world.agent_cell)) reject("agent cell is blocked");

  if (spec.contains("failure_surfaces")) {
    for (const json& t : spec["failure_surfaces"]) {
      std::string name = t.get<std::string>();
      if (!Catalog::instance().find(name)) reject("unknown type: " + name);
      world.failure_surfaces.insert(name);
    }
  } else {
    world.failure_surfaces.insert("Stove");
  }

  // First pass: create instances.
  struct Pending {
    std::string id;
    std::string in;
  };
  std::vector<Pending> pending;
  for (const json& entry : spec["objects"]) {
    check_fields(entry, {"type", "ordinal", "cell", "in", "state"}, "object");
    std::string type_name = entry["type"].get<std::string>();
    const ObjectType* type = Catalog::instance().find(type_name);
    if (!type) reject("unknown type: " + type_name);

    ObjectInstance obj;
    obj.type = type_name;
    obj.ordinal = entry["ordinal"].get<int>();
    obj.id = type_name + "_" + std::to_string(obj.ordinal);
    if (world.instances.count(obj.id)) reject("duplicate instance " + obj.id);
    if (entry.contains("cell") == entry.contains("in"))
      reject(obj.id + ": exactly one of cell/in required");
    if (entry.contains("cell")) {
      obj.cell = cell_from(entry["cell"]);
      if (!world.nav.in_bounds(obj.cell)) reject(obj.id + ": cell out of bounds");
    } else {
      pending.push_back({obj.id, entry["in"].get<std::string>()});
    }
    if (entry.contains("state")) apply_state_overrides(obj, entry["state"]);
    int& ord = world.next_ordinal[type_name];
    ord = std::max(ord, obj.ordinal + 1);
    world.instances[obj.id] = std::move(obj);
  }

  // Second pass: containment.
  for (const Pending& p : pending) {
    ObjectInstance* container = world.find(p.in);
    if (!container) reject(p.id + ": container " + p.in + " not found");
    const ObjectType& ct = Catalog::instance().at(container->type);
    if (!ct.receptacle) reject(p.in + " is not a receptacle");
    if (static_cast<int>(container->state.contents.size()) >= ct.capacity)
      reject("capacity overflow in " + p.in);
    ObjectInstance* obj = world.find(p.id);
    obj->state.contained_in = p.in;
    insert_content_sorted(container->state.contents, p.id);
  }
  for (const Pending& p : pending)
    world.find(p.id)->cell = world.effective_cell(p.id);

  return world;
}

WorldState load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  json j;
  in >> j;
  return build_world(j);
}

ordered_json world_to_json(const WorldState& world) {
  ordered_json j;
  j["grid"]["width"] = world.nav.width;
  j["grid"]["height"] = world.nav.height;
  ordered_json blocked = ordered_json::array();
  for (Cell c : world.nav.blocked) blocked.push_back(cell_to(c));
  j["grid"]["blocked"] = blocked;
  j["grid"]["interaction_range"] = world.nav.interaction_range;
  j["agent_cell"] = cell_to(world.agent_cell);
  if (world.held) j["held"] = *world.held;
  ordered_json surfaces = ordered_json::array();
  for (const std::string& s : world.failure_surfaces) surfaces.push_back(s);
  j["failure_surfaces"] = surfaces;
  ordered_json objs = ordered_json::array();
  for (const auto& [id, obj] : world.instances) {
    ordered_json o;
    o["type"] = obj.type;
    o["ordinal"] = obj.ordinal;
    o["cell"] = cell_to(obj.cell);
    if (obj.held) o["held"] = true;
    const ObjectState& s = obj.state;
    ordered_json st;
    if (s.is_open) st["open"] = true;
    if (s.is_toggled_on) st["toggled"] = true;
    if (s.is_sliced) st["sliced"] = true;
    if (s.is_cooked) st["cooked"] = true;
    if (s.cook_method != CookMethod::None)
      st["cook_method"] = std::string(to_string(s.cook_method));
    if (s.is_dirty) st["dirty"] = true;
    if (s.fill != Fill::None) st["fill"] = std::string(to_string(s.fill));
    if (s.contained_in) st["in"] = *s.contained_in;
    if (!st.empty()) o["state"] = st;
    objs.push_back(o);
  }
  j["objects"] = objs;
  ordered_json ord = ordered_json::object();
  for (const auto& [type, n] : world.next_ordinal) ord[type] = n;
  j["next_ordinal"] = ord;
  return j;
}

WorldState world_from_json(const json& j) {
  WorldState world;
  world.nav.width = j["grid"]["width"].get<int>();
  world.nav.height = j["grid"]["height"].get<int>();
  for (const json& b : j["grid"]["blocked"])
    world.nav.blocked.insert(cell_from(b));
  world.nav.interaction_range = j["grid"].value("interaction_range", 1);
  world.agent_cell = cell_from(j["agent_cell"]);
  for (const json& s : j["failure_surfaces"])
    world.failure_surfaces.insert(s.get<std::string>());
  for (const json& o : j["objects"]) {
    ObjectInstance obj;
    obj.type = o["type"].get<std::string>();
    obj.ordinal = o["ordinal"].get<int>();
    obj.id = obj.type + "_" + std::to_string(obj.ordinal);
    obj.cell = cell_from(o["cell"]);
    obj.held = o.value("held", false);
    if (o.contains("state")) {
      const json& st = o["state"];
      obj.state.is_open = st.value("open", false);
      obj.state.is_toggled_on = st.value("toggled", false);
      obj.state.is_sliced = st.value("sliced", false);
      obj.state.is_cooked = st.value("cooked", false);
      if (st.contains("cook_method"))
        obj.state.cook_method =
            *cook_method_from_string(st["cook_method"].get<std::string>());
      obj.state.is_dirty = st.value("dirty", false);
      if (st.contains("fill"))
        obj.state.fill = *fill_from_string(st["fill"].get<std::string>());
      if (st.contains("in")) obj.state.contained_in = st["in"].get<std::string>();
    }
    world.instances[obj.id] = std::move(obj);
  }
  // Rebuild contents lists and ordinal counters.
  for (auto& [id, obj] : world.instances) {
    if (obj.held) world.held = id;
    int& ord = world.next_ordinal[obj.type];
    ord = std::max(ord, obj.ordinal + 1);
  }
  if (j.contains("next_ordinal"))
    for (auto it = j["next_ordinal"].begin(); it != j["next_ordinal"].end(); ++it)
      world.next_ordinal[it.key()] =
          std::max(world.next_ordinal[it.key()], it.value().get<int>());
  for (auto& [id, obj] : world.instances) {
    if (obj.state.contained_in)
      insert_content_sorted(
          world.find(*obj.state.contained_in)->state.contents, id);
  }
  return world;
}

ordered_json scene_to_json(const WorldState& world) {
  ordered_json j = world_to_json(world);
  j.erase("next_ordinal");
  return j;
}

}  // namespace planbench
