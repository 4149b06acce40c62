#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "planbench/types.hpp"

namespace planbench {

struct ObjectType {
  std::string name;
  bool pickupable = false;
  bool receptacle = false;
  bool openable = false;
  bool toggleable = false;
  bool sliceable = false;
  bool fillable = false;
  bool cookable = false;
  bool cleanable = false;
  bool knife_class = false;
  int capacity = 0;          // receptacles only
  int slice_count = 0;       // sliceable only
  std::string sliced_into;   // sliceable only: type produced by Slice
};

// Fixed immutable catalog of household object types.
class Catalog {
 public:
  static const Catalog& instance();

  const ObjectType* find(const std::string& name) const;
  const ObjectType& at(const std::string& name) const;  // throws on miss
  const std::vector<ObjectType>& types() const { return types_; }

 private:
  Catalog();
  std::vector<ObjectType> types_;
  std::map<std::string, std::size_t> index_;
};

// Admissible (action, object type) pairs, derived from catalog flags.
class AffordanceTable {
 public:
  static const AffordanceTable& instance();

  bool valid(Action a, const std::string& type_name) const;
  const std::set<std::pair<Action, std::string>>& valid_pairs() const {
    return pairs_;
  }

 private:
  explicit AffordanceTable(const Catalog& cat);
  std::set<std::pair<Action, std::string>> pairs_;
};

}  // namespace planbench
