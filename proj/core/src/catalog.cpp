#include "planbench/catalog.hpp"

#include <stdexcept>

namespace planbench {

namespace {

struct Flags {
  bool pick = false, recep = false, open = false, toggle = false;
  bool slice = false, fill = false, cook = false, clean = false, knife = false;
};

ObjectType make(std::string name, Flags f, int capacity = 0, int slices = 0,
                std::string sliced_into = "") {
  ObjectType t;
  t.name = std::move(name);
  t.pickupable = f.pick;
  t.receptacle = f.recep;
  t.openable = f.open;
  t.toggleable = f.toggle;
  t.sliceable = f.slice;
  t.fillable = f.fill;
  t.cookable = f.cook;
  t.cleanable = f.clean;
  t.knife_class = f.knife;
  t.capacity = capacity;
  t.slice_count = slices;
  t.sliced_into = std::move(sliced_into);
  return t;
}

}  // namespace

Catalog::Catalog() {
  // Foods
  types_.push_back(make("Potato", {.pick = true, .slice = true, .cook = true},
                        0, 4, "PotatoSliced"));
  types_.push_back(make("Tomato", {.pick = true, .slice = true}, 0, 4,
                        "TomatoSliced"));
  types_.push_back(make("Bread", {.pick = true, .slice = true, .cook = true},
                        0, 4, "BreadSliced"));
  types_.push_back(make("PotatoSliced", {.pick = true, .cook = true}));
  types_.push_back(make("TomatoSliced", {.pick = true}));
  types_.push_back(make("BreadSliced", {.pick = true, .cook = true}));
  // Small movables
  types_.push_back(make("Mug", {.pick = true, .fill = true, .clean = true}));
  types_.push_back(make("Cup", {.pick = true, .fill = true, .clean = true}));
  types_.push_back(make("Knife", {.pick = true, .knife = true}));
  types_.push_back(make("Fork", {.pick = true, .clean = true}));
  types_.push_back(make("Plate", {.pick = true, .recep = true, .clean = true}, 4));
  types_.push_back(make("Bowl", {.pick = true, .recep = true, .clean = true}, 3));
  types_.push_back(
      make("Pot", {.pick = true, .recep = true, .fill = true, .clean = true}, 3));
  // Fixtures
  types_.push_back(make("Fridge", {.recep = true, .open = true}, 6));
  types_.push_back(
      make("Microwave", {.recep = true, .open = true, .toggle = true}, 2));
  types_.push_back(make("Sink", {.recep = true}, 2));
  types_.push_back(make("CounterTop", {.recep = true}, 20));
  types_.push_back(make("Stove", {.recep = true, .toggle = true}, 2));
  types_.push_back(make("CoffeeMachine", {.recep = true, .toggle = true}, 1));
  types_.push_back(make("Faucet", {.toggle = true}));
  types_.push_back(make("Plant", {.fill = true}));
  types_.push_back(make("Drawer", {.recep = true, .open = true}, 3));
  types_.push_back(make("Cabinet", {.recep = true, .open = true}, 4));
  types_.push_back(make("DiningTable", {.recep = true}, 20));

  for (std::size_t i = 0; i < types_.size(); ++i) index_[types_[i].name] = i;
}

const Catalog& Catalog::instance() {
  static const Catalog cat;
  return cat;
}

const ObjectType* Catalog::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &types_[it->second];
}

const ObjectType& Catalog::at(const std::string& name) const {
  const ObjectType* t = find(name);
  if (!t) throw std::runtime_error("unknown object type: " + name);
  return *t;
}

AffordanceTable::AffordanceTable(const Catalog& cat) {
  for (const ObjectType& t : cat.types()) {
    if (t.pickupable) pairs_.insert({Action::Pickup, t.name});
    if (t.receptacle) pairs_.insert({Action::Place, t.name});
    if (t.openable) {
      pairs_.insert({Action::Open, t.name});
      pairs_.insert({Action::Close, t.name});
    }
    if (t.toggleable) {
      pairs_.insert({Action::ToggleOn, t.name});
      pairs_.insert({Action::ToggleOff, t.name});
    }
    if (t.sliceable) pairs_.insert({Action::Slice, t.name});
    if (t.fillable || t.name == "Sink" || t.name == "Plant")
      pairs_.insert({Action::Pour, t.name});
  }
}

const AffordanceTable& AffordanceTable::instance() {
  static const AffordanceTable table(Catalog::instance());
  return table;
}

bool AffordanceTable::valid(Action a, const std::string& type_name) const {
  return pairs_.count({a, type_name}) > 0;
}

}  // namespace planbench
