#pragma once

#include <string>

#include <json.hpp>

#include "planbench/world.hpp"

namespace planbench {

// Builds a world from a declarative scene spec. Rejects unknown types,
// unknown fields, capacity overflows and blocked agent cells by throwing
// std::runtime_error naming the offending entry.
WorldState build_world(const nlohmann::json& scene_spec);

WorldState load_scene_file(const std::string& path);

// Full-fidelity world snapshot round trip (used to embed worlds in files).
nlohmann::ordered_json world_to_json(const WorldState& world);
WorldState world_from_json(const nlohmann::json& j);

// Canonical scene text for a freshly built (no held item) world.
nlohmann::ordered_json scene_to_json(const WorldState& world);

}  // namespace planbench
