#include "planbench/dialog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace planbench {

namespace {

std::string display_name(const std::string& type) {
  std::string out;
  for (char c : type) {
    if (std::isupper(static_cast<unsigned char>(c)) && !out.empty())
      out += ' ';
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string plural_name(const std::string& type) {
  if (type == "Potato") return "potatoes";
  if (type == "Tomato") return "tomatoes";
  if (type == "Knife") return "knives";
  return display_name(type) + "s";
}

// Normalized phrase -> catalog type name.
const std::map<std::string, std::string>& type_words() {
  static const std::map<std::string, std::string> words = [] {
    std::map<std::string, std::string> w;
    for (const ObjectType& t : Catalog::instance().types()) {
      w[display_name(t.name)] = t.name;
      w[plural_name(t.name)] = t.name;
      // collapsed multiword variants: "countertop", "coffeemachine"
      std::string collapsed;
      for (char c : display_name(t.name))
        if (c != ' ') collapsed += c;
      w[collapsed] = t.name;
    }
    w["micro wave"] = "Microwave";
    return w;
  }();
  return words;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char raw : text) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  for (std::string& t : tokens)
    if (t == "sliceses") t = "slices";
  return tokens;
}

// Matches a type phrase at tokens[i] (two-token phrases first); returns the
// type name and advances i past the phrase.
std::optional<std::string> match_type(const std::vector<std::string>& tokens,
                                      std::size_t& i) {
  const auto& words = type_words();
  if (i + 1 < tokens.size()) {
    auto it = words.find(tokens[i] + " " + tokens[i + 1]);
    if (it != words.end()) {
      i += 2;
      return it->second;
    }
  }
  auto it = words.find(tokens[i]);
  if (it != words.end()) {
    ++i;
    return it->second;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::size_t>> type_mentions(
    const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::size_t>> mentions;
  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t at = i;
    if (auto t = match_type(tokens, i)) {
      mentions.push_back({*t, at});
    } else {
      ++i;
    }
  }
  return mentions;
}

bool has_token(const std::vector<std::string>& tokens, std::string_view t) {
  return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

std::optional<int> parse_count(const std::string& token) {
  static const std::map<std::string, int> words = {
      {"one", 1}, {"two", 2}, {"three", 3}, {"four", 4}, {"five", 5}};
  if (auto it = words.find(token); it != words.end()) return it->second;
  if (std::all_of(token.begin(), token.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }) && !token.empty())
    return std::atoi(token.c_str());
  return std::nullopt;
}

// "[the] X is (inside|in) [the] Y"
std::optional<std::pair<std::string, std::string>> parse_hint(
    const std::vector<std::string>& tokens) {
  std::size_t i = 0;
  if (i < tokens.size() && tokens[i] == "the") ++i;
  auto obj = i < tokens.size() ? match_type(tokens, i) : std::nullopt;
  if (!obj) return std::nullopt;
  if (i >= tokens.size() || tokens[i] != "is") return std::nullopt;
  ++i;
  if (i < tokens.size() && (tokens[i] == "inside" || tokens[i] == "in")) ++i;
  else return std::nullopt;
  if (i < tokens.size() && tokens[i] == "the") ++i;
  auto container = i < tokens.size() ? match_type(tokens, i) : std::nullopt;
  if (!container) return std::nullopt;
  return std::make_pair(*obj, *container);
}

bool is_slices_receptacle(const std::string& type) {
  const ObjectType& t = Catalog::instance().at(type);
  return t.receptacle && type != "Microwave" && type != "Stove" &&
         type != "Fridge" && type != "CoffeeMachine";
}

std::string preposition_for(const std::string& type) {
  if (type == "CounterTop" || type == "DiningTable" || type == "Plate" ||
      type == "Stove")
    return "on";
  return "in";
}

}  // namespace

std::vector<std::string> task_relevant_types(const TaskSpec& task) {
  switch (task.family) {
    case TaskFamily::Coffee: return {"Mug"};
    case TaskFamily::WaterPlant: return {"Cup"};
    case TaskFamily::PlateOfToast: return {"Bread", "Plate", "Knife"};
    case TaskFamily::CleanAllX: return {task.x};
    case TaskFamily::PutAllXOnY:
    case TaskFamily::PutAllXInOneY: return {task.x};
    case TaskFamily::NSlicesOfXInY: return {task.x, task.y, "Knife"};
    case TaskFamily::NCookedSlicesOfXInY: return {task.x, task.y, "Knife"};
    case TaskFamily::BoilX: return {task.x, "Cup"};
    case TaskFamily::Salad: return {"Tomato", "Potato", "Plate", "Knife"};
    case TaskFamily::Sandwich: return {"Bread", "Tomato", "Plate", "Knife"};
    case TaskFamily::Breakfast: return {"Mug", "Bread", "Plate", "Knife"};
  }
  return {};
}

std::vector<std::string> render_dialog(const TaskSpec& task,
                                       const WorldState& world,
                                       std::uint64_t seed) {
  const int v = static_cast<int>(seed % 2);
  std::vector<std::string> out;
  auto fmt = [&](const std::string& a, const std::string& b) {
    out.push_back(v == 0 ? a : b);
  };
  const std::string x = task.x.empty() ? "" : display_name(task.x);
  const std::string xp = task.x.empty() ? "" : plural_name(task.x);
  const std::string y = task.y.empty() ? "" : display_name(task.y);
  const std::string n = std::to_string(task.n);
  switch (task.family) {
    case TaskFamily::Coffee:
      fmt("make coffee", "make me a coffee");
      break;
    case TaskFamily::WaterPlant:
      fmt("water the plant", "please water the plant");
      break;
    case TaskFamily::PlateOfToast:
      fmt("make a plate of toast", "i want a plate of toast");
      break;
    case TaskFamily::CleanAllX:
      fmt("clean all the " + xp, "wash all the " + xp);
      break;
    case TaskFamily::PutAllXOnY:
      fmt("put all the " + xp + " " + preposition_for(task.y) + " the " + y,
          "place all the " + xp + " " + preposition_for(task.y) + " the " + y);
      break;
    case TaskFamily::PutAllXInOneY:
      fmt("put all the " + xp + " in one " + y,
          "place all the " + xp + " in one " + y);
      break;
    case TaskFamily::NSlicesOfXInY:
      fmt("make " + n + " slices of " + x, "cut " + n + " slices of " + x);
      out.push_back("serve them " + preposition_for(task.y) + " a " + y);
      break;
    case TaskFamily::NCookedSlicesOfXInY:
      fmt("cook " + n + " slices of " + x,
          "make " + n + " cooked slices of " + x);
      out.push_back("serve them " + preposition_for(task.y) + " a " + y);
      break;
    case TaskFamily::BoilX:
      fmt("boil a " + x, "please boil a " + x);
      break;
    case TaskFamily::Salad:
      fmt("make a salad", "prepare a salad");
      break;
    case TaskFamily::Sandwich:
      fmt("make a sandwich", "make me a sandwich");
      break;
    case TaskFamily::Breakfast:
      fmt("make breakfast", "prepare breakfast");
      break;
  }
  // Location hints for task-relevant objects hidden in closed receptacles.
  for (const std::string& type : task_relevant_types(task)) {
    for (const auto& [id, obj] : world.instances) {
      if (obj.type != type || !world.occluded(id)) continue;
      const ObjectInstance* container = world.find(*obj.state.contained_in);
      out.push_back("the " + display_name(type) + " is inside the " +
                    display_name(container->type));
      break;
    }
  }
  return out;
}

std::optional<TaskSpec> parse_task_spec(
    const std::vector<std::string>& dialog) {
  TaskSpec task;
  bool found = false;
  std::vector<std::pair<std::string, std::string>> hints;

  for (const std::string& utterance : dialog) {
    std::vector<std::string> tokens = tokenize(utterance);
    if (tokens.empty()) continue;
    if (auto hint = parse_hint(tokens)) {
      hints.push_back(*hint);
      continue;
    }
    auto mentions = type_mentions(tokens);

    if (found) {
      // "serve them in a plate" style continuation supplying y.
      if (task.needs_y() && task.y.empty()) {
        for (const auto& [type, at] : mentions) {
          if (is_slices_receptacle(type)) {
            task.y = type;
            break;
          }
        }
      }
      continue;
    }

    if (has_token(tokens, "slices")) {
      found = true;
      bool cooked = has_token(tokens, "cook") || has_token(tokens, "cooked");
      task.family = cooked ? TaskFamily::NCookedSlicesOfXInY
                           : TaskFamily::NSlicesOfXInY;
      task.n = 1;
      auto slices_at = std::find(tokens.begin(), tokens.end(), "slices");
      for (auto it = tokens.begin(); it != slices_at; ++it)
        if (auto c = parse_count(*it)) {
          task.n = *c;
          break;
        }
      for (const auto& [type, at] : mentions) {
        if (Catalog::instance().at(type).sliceable && task.x.empty())
          task.x = type;
        else if (is_slices_receptacle(type) && task.y.empty())
          task.y = type;
      }
      if (task.x.empty()) return std::nullopt;
    } else if (has_token(tokens, "boil")) {
      found = true;
      task.family = TaskFamily::BoilX;
      for (const auto& [type, at] : mentions)
        if (Catalog::instance().at(type).cookable) {
          task.x = type;
          break;
        }
      if (task.x.empty()) return std::nullopt;
    } else if (has_token(tokens, "salad")) {
      found = true;
      task.family = TaskFamily::Salad;
    } else if (has_token(tokens, "sandwich")) {
      found = true;
      task.family = TaskFamily::Sandwich;
    } else if (has_token(tokens, "breakfast")) {
      found = true;
      task.family = TaskFamily::Breakfast;
    } else if (has_token(tokens, "toast")) {
      found = true;
      task.family = TaskFamily::PlateOfToast;
    } else if (has_token(tokens, "plant") && has_token(tokens, "water")) {
      found = true;
      task.family = TaskFamily::WaterPlant;
    } else if (has_token(tokens, "coffee")) {
      found = true;
      task.family = TaskFamily::Coffee;
    } else if ((has_token(tokens, "clean") || has_token(tokens, "wash")) &&
               has_token(tokens, "all")) {
      found = true;
      task.family = TaskFamily::CleanAllX;
      if (!mentions.empty()) task.x = mentions.front().first;
      if (task.x.empty()) return std::nullopt;
    } else if ((has_token(tokens, "put") || has_token(tokens, "place")) &&
               has_token(tokens, "all")) {
      found = true;
      task.family = has_token(tokens, "one") ? TaskFamily::PutAllXInOneY
                                             : TaskFamily::PutAllXOnY;
      if (mentions.size() >= 2) {
        task.x = mentions.front().first;
        task.y = mentions.back().first;
      } else {
        return std::nullopt;
      }
    }
  }

  if (!found) return std::nullopt;
  if (task.needs_y() && task.y.empty()) task.y = "Plate";
  task.location_hints = std::move(hints);
  return task;
}

}  // namespace planbench
