#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "planbench/catalog.hpp"
#include "planbench/types.hpp"

namespace planbench {

struct ObjectState {
  bool is_open = false;
  bool is_toggled_on = false;
  bool is_sliced = false;
  bool is_cooked = false;
  CookMethod cook_method = CookMethod::None;
  bool is_dirty = false;
  Fill fill = Fill::None;
  std::optional<std::string> contained_in;
  std::vector<std::string> contents;

  auto operator<=>(const ObjectState&) const = default;
};

struct ObjectInstance {
  std::string id;       // "<Type>_<ordinal>"
  std::string type;
  int ordinal = 0;
  Cell cell;            // effective location; meaningless while held
  bool held = false;
  ObjectState state;

  auto operator<=>(const ObjectInstance&) const = default;
};

struct NavGraph {
  int width = 0;
  int height = 0;
  std::set<Cell> blocked;
  int interaction_range = 1;

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
  }
  bool passable(Cell c) const { return in_bounds(c) && !blocked.count(c); }

  auto operator<=>(const NavGraph&) const = default;
};

enum class FailureReason {
  None,
  InvalidPair,
  PrerequisiteMissing,
  NotInRange,
  Occluded,
  CapacityExceeded,
  SurfaceRejected,
  NoSuchObject,
};

std::string_view to_string(FailureReason r);

struct InteractionOutcome {
  bool success = true;
  FailureReason failure_reason = FailureReason::None;

  static InteractionOutcome ok() { return {}; }
  static InteractionOutcome fail(FailureReason r) { return {false, r}; }
};

struct WorldState {
  std::map<std::string, ObjectInstance> instances;
  Cell agent_cell;
  std::optional<std::string> held;
  NavGraph nav;
  std::set<std::string> failure_surfaces;  // type names; Place always fails
  std::map<std::string, int> next_ordinal; // per-type id allocation

  bool operator==(const WorldState&) const = default;

  const ObjectInstance* find(const std::string& id) const;
  ObjectInstance* find(const std::string& id);
  // Cell of the outermost container, or the object's own cell.
  Cell effective_cell(const std::string& id) const;
  // True if any transitive container is a closed receptacle.
  bool occluded(const std::string& id) const;
};

struct ObsEntry {
  std::string id;
  std::string type;
  bool held = false;
  bool is_open = false;
  bool is_toggled_on = false;
  bool is_sliced = false;
  bool is_cooked = false;
  bool is_dirty = false;
  Fill fill = Fill::None;
  std::optional<std::string> contained_in;

  auto operator<=>(const ObsEntry&) const = default;
};
using Observation = std::vector<ObsEntry>;

// Splits "Mug_12" into {"Mug", 12}.
std::pair<std::string, int> split_id(const std::string& id);
// Orders ids by (type, numeric ordinal).
bool id_order(const std::string& a, const std::string& b);
// Keeps receptacle contents canonically sorted in id_order.
void insert_content_sorted(std::vector<std::string>& contents,
                           const std::string& id);

// BFS distances from `from` over unblocked cells; unreachable = -1.
std::vector<int> grid_distances(const NavGraph& nav, Cell from);

std::optional<std::string> closest_instance(const WorldState& world,
                                            const std::string& type_name);

// Minimal path from agent_cell to a cell within interaction_range of the
// target's effective cell. Excludes the start cell; empty if already in range.
std::optional<std::vector<Cell>> shortest_path(const WorldState& world,
                                               const std::string& target_id);

std::pair<WorldState, InteractionOutcome> apply_interaction(
    const WorldState& world, Action action, const std::string& target_id);

Observation visible_objects(const WorldState& world);

}  // namespace planbench
