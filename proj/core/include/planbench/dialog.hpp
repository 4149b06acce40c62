#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planbench/tasks.hpp"
#include "planbench/world.hpp"

namespace planbench {

// Templated Commander-style utterances: a task directive plus location hints
// for task-relevant objects hidden inside closed receptacles. Deterministic
// for (task, world, seed); parse_task_spec inverts it exactly.
std::vector<std::string> render_dialog(const TaskSpec& task,
                                       const WorldState& world,
                                       std::uint64_t seed);

// Total template-grammar parse of the dialog; nullopt when no directive
// matches.
std::optional<TaskSpec> parse_task_spec(const std::vector<std::string>& dialog);

// Movable task-relevant types whose instances the demonstration may touch.
std::vector<std::string> task_relevant_types(const TaskSpec& task);

}  // namespace planbench
