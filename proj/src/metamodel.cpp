#include "epsilite/metamodel.hpp"

#include <set>

#include "epsilite/diagnostic.hpp"

namespace epsilite {

bool is_primitive_type(std::string_view name) {
  return name == "String" || name == "Integer" || name == "Real" || name == "Boolean";
}

const FeatureDef* ClassDef::find_feature(std::string_view name) const {
  for (const FeatureDef* f : effective_) {
    if (f->name == name) return f;
  }
  return nullptr;
}

bool ClassDef::conforms_to(const ClassDef& other) const {
  return distance_to(other).has_value();
}

std::optional<int> ClassDef::distance_to(const ClassDef& ancestor) const {
  int steps = 0;
  for (const ClassDef* c = this; c != nullptr; c = c->super_, ++steps) {
    if (c == &ancestor) return steps;
  }
  return std::nullopt;
}

Metamodel::Metamodel(std::string name, std::vector<ClassDef> classes) : name_(std::move(name)) {
  for (auto& c : classes) {
    if (find_class(c.name())) throw ModelError("duplicate class " + c.name());
    classes_.push_back(std::make_unique<ClassDef>(std::move(c)));
  }

  for (auto& c : classes_) {
    if (!c->supertype_) continue;
    c->super_ = find_class(*c->supertype_);
    if (!c->super_) throw ModelError("unknown supertype " + *c->supertype_ + " of " + c->name());
  }

  for (auto& c : classes_) {
    std::set<const ClassDef*> seen;
    for (const ClassDef* s = c.get(); s != nullptr; s = s->super_) {
      if (!seen.insert(s).second) throw ModelError("inheritance cycle through " + c->name());
    }
  }

  for (auto& c : classes_) {
    std::vector<const ClassDef*> chain;
    for (const ClassDef* s = c.get(); s != nullptr; s = s->super_) chain.insert(chain.begin(), s);
    std::set<std::string> names;
    for (const ClassDef* s : chain) {
      for (const FeatureDef& f : s->features_) {
        if (!names.insert(f.name).second) {
          throw ModelError("duplicate feature " + f.name + " in " + c->name());
        }
        if (f.kind == FeatureKind::attribute) {
          if (!is_primitive_type(f.value_type)) {
            throw ModelError("attribute " + s->name() + "." + f.name + " must have a primitive type");
          }
        } else if (!find_class(f.value_type)) {
          throw ModelError("unknown type " + f.value_type + " of " + s->name() + "." + f.name);
        }
        c->effective_.push_back(&f);
      }
    }
  }
}

const ClassDef* Metamodel::find_class(std::string_view name) const {
  for (const auto& c : classes_) {
    if (c->name() == name) return c.get();
  }
  return nullptr;
}

}  // namespace epsilite
