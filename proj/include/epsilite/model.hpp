#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "epsilite/metamodel.hpp"
#include "epsilite/value.hpp"

namespace epsilite {

enum class Access { read_only, write_only, read_write };

std::string_view to_string(Access access);

struct ModelElement {
  std::string id;
  const ClassDef* type = nullptr;
  /// One entry per effective feature. Element references are stored without
  /// a model name; Model::get_feature fills it in.
  std::map<std::string, Value, std::less<>> slots;
};

/// Where an element is contained: owner id and containment feature name.
struct Containment {
  std::string owner;
  std::string feature;
};

class Model {
 public:
  Model(std::string name, MetamodelPtr metamodel, Access access = Access::read_write);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Metamodel& metamodel() const noexcept { return *metamodel_; }
  const MetamodelPtr& metamodel_ptr() const noexcept { return metamodel_; }
  Access access() const noexcept { return access_; }
  void set_access(Access access) noexcept { access_ = access; }
  bool writable() const noexcept { return access_ != Access::read_only; }

  /// Live elements in creation order.
  const std::vector<ModelElement>& elements() const noexcept { return elements_; }
  const ModelElement* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  ElementRef ref(const ModelElement& element) const;
  ElementRef ref(std::string_view id) const;

  /// Creates an element with all single slots Undefined and all many slots
  /// empty. Without an explicit id a fresh `e<k>` id is generated.
  ElementRef instantiate(std::string_view class_name, std::optional<std::string> id = {});

  Value get_feature(std::string_view id, std::string_view feature) const;

  /// Replaces a slot. Integer values widen to Real for Real attributes;
  /// elements assigned to a containment slot leave their previous container.
  void set_feature(std::string_view id, std::string_view feature, const Value& value);

  /// Removes the element and everything it (transitively) contains, then
  /// clears every slot that referenced a removed element.
  void delete_element(std::string_view id);

  /// Instances of `type` or any subtype, in creation order.
  std::vector<ElementRef> all_instances(const ClassDef& type) const;

  std::optional<Containment> container_of(std::string_view id) const;

  /// Checks every model invariant; returns one message per violation.
  std::vector<std::string> audit() const;

 private:
  void require_writable(std::string_view operation) const;
  ModelElement& element(std::string_view id);
  const ModelElement& element(std::string_view id) const;
  Value conform(const ModelElement& owner, const FeatureDef& feature, const Value& value) const;
  Value conform_single(const ModelElement& owner, const FeatureDef& feature, const Value& value) const;
  Value externalize(const Value& stored) const;
  void reindex();

  std::string name_;
  MetamodelPtr metamodel_;
  Access access_;
  std::vector<ModelElement> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_set<std::string> used_ids_;
  std::size_t next_id_ = 1;
};

/// Element ids referenced by a stored slot value (single ref or collection).
std::vector<std::string> referenced_ids(const Value& slot);

/// Same classes, same slot values, same creation order; element ids may differ.
bool isomorphic(const Model& a, const Model& b);

/// Named models in binding order.
class Repository {
 public:
  Model& add(Model model);
  Model* find(std::string_view name);
  const Model* find(std::string_view name) const;
  Model& model_of(const ElementRef& ref);
  const std::vector<std::unique_ptr<Model>>& models() const noexcept { return models_; }

 private:
  std::vector<std::unique_ptr<Model>> models_;
};

/// All instances of `class_name` (subtypes included) across the given models,
/// models in the given order. Models whose metamodel lacks the class are skipped.
Value all_instances(std::span<const Model* const> models, std::string_view class_name);

}  // namespace epsilite
