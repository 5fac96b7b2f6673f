#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace epsilite {

struct Undefined {
  bool operator==(const Undefined&) const = default;
};

/// Identity of a model element. `type` caches the element's class name for
/// display; identity is (model, id) only.
struct ElementRef {
  std::string model;
  std::string id;
  std::string type;

  bool operator==(const ElementRef& other) const noexcept {
    return model == other.model && id == other.id;
  }
};

enum class CollectionKind { sequence, set };

/// Marks a collection that was read from a many-valued slot. Mutating
/// built-ins (add/addAll) on such a collection write back through the model.
struct SlotOrigin {
  std::string model;
  std::string element;
  std::string feature;
};

class Value;

struct Collection {
  CollectionKind kind = CollectionKind::sequence;
  std::vector<Value> items;
  std::optional<SlotOrigin> origin;

  bool contains(const Value& v) const;
  /// Appends `v`; a set ignores members already present.
  void add(Value v);
};

using CollectionPtr = std::shared_ptr<Collection>;

/// Runtime value. Collections have reference semantics (copies of a Value
/// alias the same collection), everything else is a plain value.
class Value {
 public:
  using Storage =
      std::variant<Undefined, bool, std::int64_t, double, std::string, ElementRef, CollectionPtr>;

  Value() = default;
  Value(Undefined) {}
  Value(bool b) : storage_(b) {}
  Value(std::int64_t i) : storage_(i) {}
  Value(int i) : storage_(std::int64_t{i}) {}
  Value(double d) : storage_(d) {}
  Value(std::string s) : storage_(std::move(s)) {}
  Value(const char* s) : storage_(std::string(s)) {}
  Value(ElementRef r) : storage_(std::move(r)) {}
  Value(CollectionPtr c) : storage_(std::move(c)) {}

  static Value sequence(std::vector<Value> items = {});
  static Value set(std::vector<Value> items = {});
  static Value collection(CollectionKind kind, std::vector<Value> items = {});

  const Storage& storage() const noexcept { return storage_; }

  bool is_undefined() const noexcept { return std::holds_alternative<Undefined>(storage_); }
  bool is_bool() const noexcept { return std::holds_alternative<bool>(storage_); }
  bool is_integer() const noexcept { return std::holds_alternative<std::int64_t>(storage_); }
  bool is_real() const noexcept { return std::holds_alternative<double>(storage_); }
  bool is_number() const noexcept { return is_integer() || is_real(); }
  bool is_string() const noexcept { return std::holds_alternative<std::string>(storage_); }
  bool is_element() const noexcept { return std::holds_alternative<ElementRef>(storage_); }
  bool is_collection() const noexcept { return std::holds_alternative<CollectionPtr>(storage_); }

  bool as_bool() const { return std::get<bool>(storage_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(storage_); }
  double as_real() const { return std::get<double>(storage_); }
  /// Integer or Real widened to double.
  double as_number() const;
  const std::string& as_string() const { return std::get<std::string>(storage_); }
  const ElementRef& as_element() const { return std::get<ElementRef>(storage_); }
  const CollectionPtr& as_collection() const { return std::get<CollectionPtr>(storage_); }

 private:
  Storage storage_;
};

/// Structural equality: numbers by value (2 == 2.0), elements by identity,
/// sequences pointwise, sets by mutual containment, Undefined == Undefined.
bool value_equals(const Value& a, const Value& b);

/// Print form used by println and string concatenation.
std::string display(const Value& v);

/// Runtime type name ("Integer", "Sequence", the class name of an element...).
std::string type_name(const Value& v);

/// Copies the collection storage (one level deep) and drops any slot origin.
Value detach(const Value& v);

}  // namespace epsilite
