#include "planbench/types.hpp"

namespace planbench {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Pickup: return "Pickup";
    case Action::Place: return "Place";
    case Action::Open: return "Open";
    case Action::Close: return "Close";
    case Action::ToggleOn: return "ToggleOn";
    case Action::ToggleOff: return "ToggleOff";
    case Action::Slice: return "Slice";
    case Action::Pour: return "Pour";
    case Action::Stop: return "Stop";
  }
  return "?";
}

std::optional<Action> action_from_string(std::string_view s) {
  for (Action a : kInteractionActions)
    if (s == to_string(a)) return a;
  if (s == "Stop") return Action::Stop;
  return std::nullopt;
}

std::string_view to_string(LowLevelKind k) {
  switch (k) {
    case LowLevelKind::MoveForward: return "MoveForward";
    case LowLevelKind::MoveBackward: return "MoveBackward";
    case LowLevelKind::TurnLeft: return "TurnLeft";
    case LowLevelKind::TurnRight: return "TurnRight";
    case LowLevelKind::StrafeLeft: return "StrafeLeft";
    case LowLevelKind::StrafeRight: return "StrafeRight";
    case LowLevelKind::LookUp: return "LookUp";
    case LowLevelKind::LookDown: return "LookDown";
    case LowLevelKind::NavigateTo: return "NavigateTo";
    case LowLevelKind::Pickup: return "Pickup";
    case LowLevelKind::Place: return "Place";
    case LowLevelKind::Open: return "Open";
    case LowLevelKind::Close: return "Close";
    case LowLevelKind::ToggleOn: return "ToggleOn";
    case LowLevelKind::ToggleOff: return "ToggleOff";
    case LowLevelKind::Slice: return "Slice";
    case LowLevelKind::Pour: return "Pour";
    case LowLevelKind::Stop: return "Stop";
  }
  return "?";
}

std::optional<LowLevelKind> low_level_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(LowLevelKind::Stop); ++i) {
    auto k = static_cast<LowLevelKind>(i);
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_interaction(LowLevelKind k) {
  return k >= LowLevelKind::Pickup && k <= LowLevelKind::Pour;
}

bool is_navigation(LowLevelKind k) {
  return k <= LowLevelKind::NavigateTo;
}

Action interaction_action(LowLevelKind k) {
  return static_cast<Action>(static_cast<int>(k) -
                             static_cast<int>(LowLevelKind::Pickup));
}

LowLevelKind low_level_of(Action a) {
  return static_cast<LowLevelKind>(static_cast<int>(a) +
                                   static_cast<int>(LowLevelKind::Pickup));
}

std::string_view to_string(Fill f) {
  switch (f) {
    case Fill::None: return "none";
    case Fill::Water: return "water";
    case Fill::Coffee: return "coffee";
  }
  return "?";
}

std::string_view to_string(CookMethod m) {
  switch (m) {
    case CookMethod::None: return "none";
    case CookMethod::Microwave: return "microwave";
    case CookMethod::Stove: return "stove";
    case CookMethod::Boil: return "boil";
  }
  return "?";
}

std::optional<Fill> fill_from_string(std::string_view s) {
  if (s == "none") return Fill::None;
  if (s == "water") return Fill::Water;
  if (s == "coffee") return Fill::Coffee;
  return std::nullopt;
}

std::optional<CookMethod> cook_method_from_string(std::string_view s) {
  if (s == "none") return CookMethod::None;
  if (s == "microwave") return CookMethod::Microwave;
  if (s == "stove") return CookMethod::Stove;
  if (s == "boil") return CookMethod::Boil;
  return std::nullopt;
}

}  // namespace planbench
