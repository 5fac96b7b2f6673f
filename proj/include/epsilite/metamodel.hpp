#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epsilite {

enum class FeatureKind { attribute, containment, reference };

struct FeatureDef {
  std::string name;
  FeatureKind kind = FeatureKind::attribute;
  /// Primitive name (String, Integer, Real, Boolean) for attributes, class
  /// name for containment and reference features.
  std::string value_type;
  bool many = false;
};

bool is_primitive_type(std::string_view name);

class ClassDef {
 public:
  ClassDef(std::string name, std::optional<std::string> supertype, std::vector<FeatureDef> features)
      : name_(std::move(name)), supertype_(std::move(supertype)), features_(std::move(features)) {}

  const std::string& name() const noexcept { return name_; }
  const std::optional<std::string>& supertype_name() const noexcept { return supertype_; }
  const ClassDef* supertype() const noexcept { return super_; }
  /// Own features only, in declaration order.
  const std::vector<FeatureDef>& own_features() const noexcept { return features_; }
  /// Inherited features first (root class outward), then own ones.
  const std::vector<const FeatureDef*>& features() const noexcept { return effective_; }
  const FeatureDef* find_feature(std::string_view name) const;

  /// True when this class is `other` or inherits from it.
  bool conforms_to(const ClassDef& other) const;
  /// Number of inheritance steps up to `ancestor`, or nullopt when unrelated.
  std::optional<int> distance_to(const ClassDef& ancestor) const;

 private:
  friend class Metamodel;

  std::string name_;
  std::optional<std::string> supertype_;
  std::vector<FeatureDef> features_;
  const ClassDef* super_ = nullptr;
  std::vector<const FeatureDef*> effective_;
};

/// Immutable once constructed; share it through MetamodelPtr.
class Metamodel {
 public:
  /// Throws ModelError if any class or feature invariant is broken.
  Metamodel(std::string name, std::vector<ClassDef> classes);

  Metamodel(const Metamodel&) = delete;
  Metamodel& operator=(const Metamodel&) = delete;

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::unique_ptr<ClassDef>>& classes() const noexcept { return classes_; }
  const ClassDef* find_class(std::string_view name) const;

 private:
  std::string name_;
  std::vector<std::unique_ptr<ClassDef>> classes_;
};

using MetamodelPtr = std::shared_ptr<const Metamodel>;

}  // namespace epsilite
