#include "epsilite/model.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "epsilite/diagnostic.hpp"

namespace epsilite {

std::string_view to_string(Access access) {
  switch (access) {
    case Access::read_only: return "r";
    case Access::write_only: return "w";
    case Access::read_write: return "rw";
  }
  return "?";
}

namespace {

ElementRef internal_ref(const ModelElement& e) { return ElementRef{"", e.id, e.type->name()}; }

Value empty_slot(const FeatureDef& f) { return f.many ? Value::sequence() : Value(); }

std::string describe(const Value& v) {
  return v.is_element() ? type_name(v) + "#" + v.as_element().id : type_name(v);
}

}  // namespace

std::vector<std::string> referenced_ids(const Value& slot) {
  std::vector<std::string> ids;
  if (slot.is_element()) {
    ids.push_back(slot.as_element().id);
  } else if (slot.is_collection()) {
    for (const auto& item : slot.as_collection()->items) {
      if (item.is_element()) ids.push_back(item.as_element().id);
    }
  }
  return ids;
}

Model::Model(std::string name, MetamodelPtr metamodel, Access access)
    : name_(std::move(name)), metamodel_(std::move(metamodel)), access_(access) {}

const ModelElement* Model::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &elements_[it->second];
}

ElementRef Model::ref(const ModelElement& element) const {
  return ElementRef{name_, element.id, element.type->name()};
}

ElementRef Model::ref(std::string_view id) const { return ref(element(id)); }

ModelElement& Model::element(std::string_view id) {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw ModelError("no element " + std::string(id) + " in model " + name_);
  return elements_[it->second];
}

const ModelElement& Model::element(std::string_view id) const {
  return const_cast<Model*>(this)->element(id);
}

void Model::require_writable(std::string_view operation) const {
  if (!writable()) {
    throw AccessViolation("access violation: cannot " + std::string(operation) +
                          " in read-only model " + name_);
  }
}

void Model::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i].id] = i;
}

ElementRef Model::instantiate(std::string_view class_name, std::optional<std::string> id) {
  require_writable("create a " + std::string(class_name));
  const ClassDef* type = metamodel_->find_class(class_name);
  if (!type) throw ModelError("unknown class " + std::string(class_name) + " in model " + name_);

  std::string new_id;
  if (id) {
    if (id->empty()) throw ModelError("empty element id");
    if (used_ids_.count(*id)) throw ModelError("duplicate element id " + *id);
    new_id = std::move(*id);
  } else {
    do {
      new_id = "e" + std::to_string(next_id_++);
    } while (used_ids_.count(new_id));
  }

  ModelElement e;
  e.id = new_id;
  e.type = type;
  for (const FeatureDef* f : type->features()) e.slots.emplace(f->name, empty_slot(*f));
  used_ids_.insert(new_id);
  index_[new_id] = elements_.size();
  elements_.push_back(std::move(e));
  return ref(elements_.back());
}

Value Model::externalize(const Value& stored) const {
  if (stored.is_element()) {
    ElementRef r = stored.as_element();
    r.model = name_;
    return r;
  }
  if (stored.is_collection()) {
    std::vector<Value> items;
    items.reserve(stored.as_collection()->items.size());
    for (const auto& item : stored.as_collection()->items) items.push_back(externalize(item));
    return Value::collection(stored.as_collection()->kind, std::move(items));
  }
  return stored;
}

Value Model::get_feature(std::string_view id, std::string_view feature) const {
  const ModelElement& e = element(id);
  auto it = e.slots.find(feature);
  if (it == e.slots.end()) {
    throw ModelError("unknown feature " + std::string(feature) + " on " + e.type->name());
  }
  return externalize(it->second);
}

Value Model::conform_single(const ModelElement& owner, const FeatureDef& f,
                            const Value& value) const {
  auto mismatch = [&]() {
    return ModelError("type mismatch: " + owner.type->name() + "." + f.name + " expects " +
                      f.value_type + ", got " + describe(value));
  };
  if (f.kind == FeatureKind::attribute) {
    if (f.value_type == "String" && value.is_string()) return value;
    if (f.value_type == "Integer" && value.is_integer()) return value;
    if (f.value_type == "Boolean" && value.is_bool()) return value;
    if (f.value_type == "Real" && value.is_number()) return Value(value.as_number());
    throw mismatch();
  }
  if (!value.is_element()) throw mismatch();
  const ElementRef& r = value.as_element();
  if (!r.model.empty() && r.model != name_) {
    throw ModelError("cannot assign " + describe(value) + " from model " + r.model + " to " +
                     owner.type->name() + "." + f.name + " in model " + name_);
  }
  const ModelElement* target = find(r.id);
  if (!target) {
    throw ModelError("cannot assign deleted element " + describe(value) + " to " +
                     owner.type->name() + "." + f.name);
  }
  const ClassDef* expected = metamodel_->find_class(f.value_type);
  if (!target->type->conforms_to(*expected)) throw mismatch();
  return internal_ref(*target);
}

Value Model::conform(const ModelElement& owner, const FeatureDef& f, const Value& value) const {
  if (f.many) {
    if (!value.is_collection()) {
      throw ModelError("multiplicity mismatch: " + owner.type->name() + "." + f.name +
                       " is many-valued, got " + describe(value));
    }
    std::vector<Value> items;
    for (const auto& item : value.as_collection()->items) items.push_back(conform_single(owner, f, item));
    return Value::sequence(std::move(items));
  }
  if (value.is_collection()) {
    throw ModelError("multiplicity mismatch: " + owner.type->name() + "." + f.name +
                     " is single-valued, got " + describe(value));
  }
  if (value.is_undefined()) return value;
  return conform_single(owner, f, value);
}

void Model::set_feature(std::string_view id, std::string_view feature, const Value& value) {
  require_writable("set " + std::string(feature));
  ModelElement& owner = element(id);
  const FeatureDef* f = owner.type->find_feature(feature);
  if (!f) throw ModelError("unknown feature " + std::string(feature) + " on " + owner.type->name());
  Value stored = conform(owner, *f, value);

  if (f->kind == FeatureKind::containment) {
    auto children = referenced_ids(stored);
    std::set<std::string> distinct;
    for (const auto& child : children) {
      if (!distinct.insert(child).second) {
        throw ModelError("element " + child + " contained twice in " + owner.type->name() + "." +
                         f->name);
      }
      for (std::optional<std::string> up = owner.id; up; ) {
        if (*up == child) {
          throw ModelError("containment cycle: " + child + " cannot contain itself");
        }
        auto c = container_of(*up);
        up = c ? std::optional<std::string>(c->owner) : std::nullopt;
      }
    }
    for (const auto& child : children) {
      auto c = container_of(child);
      if (!c || (c->owner == owner.id && c->feature == f->name)) continue;
      Value& old = element(c->owner).slots.at(c->feature);
      if (old.is_collection()) {
        std::vector<Value> kept;
        for (const auto& item : old.as_collection()->items) {
          if (item.as_element().id != child) kept.push_back(item);
        }
        old = Value::sequence(std::move(kept));
      } else {
        old = Value();
      }
    }
  }
  // No element was added or removed above, so `owner` is still valid.
  owner.slots[f->name] = std::move(stored);
}

void Model::delete_element(std::string_view id) {
  require_writable("delete " + std::string(id));
  if (!contains(id)) throw ModelError("element " + std::string(id) + " does not exist in model " + name_);

  std::set<std::string> doomed;
  std::vector<std::string> pending{std::string(id)};
  while (!pending.empty()) {
    std::string current = std::move(pending.back());
    pending.pop_back();
    if (!doomed.insert(current).second) continue;
    const ModelElement& e = element(current);
    for (const FeatureDef* f : e.type->features()) {
      if (f->kind != FeatureKind::containment) continue;
      for (auto& child : referenced_ids(e.slots.at(f->name))) pending.push_back(std::move(child));
    }
  }

  std::erase_if(elements_, [&](const ModelElement& e) { return doomed.count(e.id) > 0; });
  reindex();

  for (auto& e : elements_) {
    for (const FeatureDef* f : e.type->features()) {
      if (f->kind == FeatureKind::attribute) continue;
      Value& slot = e.slots.at(f->name);
      if (slot.is_element() && doomed.count(slot.as_element().id)) {
        slot = Value();
      } else if (slot.is_collection()) {
        const auto& items = slot.as_collection()->items;
        bool touched = std::any_of(items.begin(), items.end(), [&](const Value& v) {
          return doomed.count(v.as_element().id) > 0;
        });
        if (!touched) continue;
        std::vector<Value> kept;
        for (const auto& item : items) {
          if (!doomed.count(item.as_element().id)) kept.push_back(item);
        }
        slot = Value::sequence(std::move(kept));
      }
    }
  }
}

std::vector<ElementRef> Model::all_instances(const ClassDef& type) const {
  if (metamodel_->find_class(type.name()) != &type) {
    throw ModelError("class " + type.name() + " does not belong to metamodel " + metamodel_->name());
  }
  std::vector<ElementRef> result;
  for (const auto& e : elements_) {
    if (e.type->conforms_to(type)) result.push_back(ref(e));
  }
  return result;
}

std::optional<Containment> Model::container_of(std::string_view id) const {
  for (const auto& e : elements_) {
    for (const FeatureDef* f : e.type->features()) {
      if (f->kind != FeatureKind::containment) continue;
      for (const auto& child : referenced_ids(e.slots.at(f->name))) {
        if (child == id) return Containment{e.id, f->name};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> Model::audit() const {
  std::vector<std::string> problems;
  std::map<std::string, int> containers;
  std::set<std::string> ids;
  for (const auto& e : elements_) {
    if (!ids.insert(e.id).second) problems.push_back("duplicate id " + e.id);
    if (metamodel_->find_class(e.type->name()) != e.type) {
      problems.push_back(e.id + ": class " + e.type->name() + " not in metamodel");
      continue;
    }
    if (e.slots.size() != e.type->features().size()) {
      problems.push_back(e.id + ": slot set does not match features of " + e.type->name());
    }
    for (const FeatureDef* f : e.type->features()) {
      auto it = e.slots.find(f->name);
      if (it == e.slots.end()) {
        problems.push_back(e.id + ": missing slot " + f->name);
        continue;
      }
      const Value& slot = it->second;
      if (f->many != slot.is_collection()) {
        problems.push_back(e.id + "." + f->name + ": multiplicity violated");
        continue;
      }
      std::vector<Value> values = slot.is_collection() ? slot.as_collection()->items
                                                       : std::vector<Value>{slot};
      for (const auto& v : values) {
        if (v.is_undefined() && !f->many) continue;
        try {
          conform_single(e, *f, v);
        } catch (const ModelError& err) {
          problems.push_back(e.id + "." + f->name + ": " + err.what());
        }
      }
      if (f->kind == FeatureKind::containment) {
        for (const auto& child : referenced_ids(slot)) ++containers[child];
      }
    }
  }
  for (const auto& [id, count] : containers) {
    if (count > 1) problems.push_back(id + " has " + std::to_string(count) + " containers");
  }
  if (index_.size() != elements_.size()) problems.push_back("index out of sync");
  return problems;
}

bool isomorphic(const Model& a, const Model& b) {
  if (a.elements().size() != b.elements().size()) return false;
  std::map<std::string, std::string> id_map;
  for (std::size_t i = 0; i < a.elements().size(); ++i) {
    id_map[a.elements()[i].id] = b.elements()[i].id;
  }

  std::function<bool(const Value&, const Value&)> same = [&](const Value& x, const Value& y) {
    if (x.is_element() && y.is_element()) {
      auto it = id_map.find(x.as_element().id);
      return it != id_map.end() && it->second == y.as_element().id;
    }
    if (x.is_collection() && y.is_collection()) {
      const auto& xs = x.as_collection()->items;
      const auto& ys = y.as_collection()->items;
      return xs.size() == ys.size() && std::equal(xs.begin(), xs.end(), ys.begin(), same);
    }
    return value_equals(x, y);
  };

  for (std::size_t i = 0; i < a.elements().size(); ++i) {
    const auto& ea = a.elements()[i];
    const auto& eb = b.elements()[i];
    if (ea.type->name() != eb.type->name()) return false;
    if (ea.slots.size() != eb.slots.size()) return false;
    for (const auto& [name, value] : ea.slots) {
      auto it = eb.slots.find(name);
      if (it == eb.slots.end() || !same(value, it->second)) return false;
    }
  }
  return true;
}

Model& Repository::add(Model model) {
  if (find(model.name())) throw ModelError("duplicate model name " + model.name());
  models_.push_back(std::make_unique<Model>(std::move(model)));
  return *models_.back();
}

Model* Repository::find(std::string_view name) {
  for (auto& m : models_) {
    if (m->name() == name) return m.get();
  }
  return nullptr;
}

const Model* Repository::find(std::string_view name) const {
  return const_cast<Repository*>(this)->find(name);
}

Model& Repository::model_of(const ElementRef& ref) {
  Model* m = find(ref.model);
  if (!m) throw ModelError("unknown model " + ref.model);
  return *m;
}

Value all_instances(std::span<const Model* const> models, std::string_view class_name) {
  std::vector<Value> result;
  bool resolved = false;
  for (const Model* m : models) {
    const ClassDef* type = m->metamodel().find_class(class_name);
    if (!type) continue;
    resolved = true;
    for (auto& r : m->all_instances(*type)) result.emplace_back(std::move(r));
  }
  if (!resolved) throw ModelError("unknown type " + std::string(class_name));
  return Value::sequence(std::move(result));
}

}  // namespace epsilite
