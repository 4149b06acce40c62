#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace planbench {

// Object interaction actions plus the explicit Stop token.
enum class Action {
  Pickup,
  Place,
  Open,
  Close,
  ToggleOn,
  ToggleOff,
  Slice,
  Pour,
  Stop,
};

inline constexpr std::array<Action, 8> kInteractionActions = {
    Action::Pickup, Action::Place,    Action::Open,  Action::Close,
    Action::ToggleOn, Action::ToggleOff, Action::Slice, Action::Pour};

std::string_view to_string(Action a);
std::optional<Action> action_from_string(std::string_view s);

// Low-level trajectory actions: navigation + interactions + Stop.
enum class LowLevelKind {
  MoveForward,
  MoveBackward,
  TurnLeft,
  TurnRight,
  StrafeLeft,
  StrafeRight,
  LookUp,
  LookDown,
  NavigateTo,
  Pickup,
  Place,
  Open,
  Close,
  ToggleOn,
  ToggleOff,
  Slice,
  Pour,
  Stop,
};

std::string_view to_string(LowLevelKind k);
std::optional<LowLevelKind> low_level_from_string(std::string_view s);
bool is_interaction(LowLevelKind k);
bool is_navigation(LowLevelKind k);
// Valid only for interaction kinds.
Action interaction_action(LowLevelKind k);
LowLevelKind low_level_of(Action a);

enum class Fill { None, Water, Coffee };
enum class CookMethod { None, Microwave, Stove, Boil };

std::string_view to_string(Fill f);
std::string_view to_string(CookMethod m);
std::optional<Fill> fill_from_string(std::string_view s);
std::optional<CookMethod> cook_method_from_string(std::string_view s);

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

inline int manhattan(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

}  // namespace planbench
