#include "epsilite/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace epsilite {

bool Collection::contains(const Value& v) const {
  return std::any_of(items.begin(), items.end(),
                     [&](const Value& item) { return value_equals(item, v); });
}

void Collection::add(Value v) {
  if (kind == CollectionKind::set && contains(v)) return;
  items.push_back(std::move(v));
}

Value Value::sequence(std::vector<Value> items) {
  return collection(CollectionKind::sequence, std::move(items));
}

Value Value::set(std::vector<Value> items) {
  return collection(CollectionKind::set, std::move(items));
}

Value Value::collection(CollectionKind kind, std::vector<Value> items) {
  auto c = std::make_shared<Collection>();
  c->kind = kind;
  for (auto& item : items) c->add(std::move(item));
  return Value(std::move(c));
}

double Value::as_number() const {
  if (is_integer()) return static_cast<double>(as_integer());
  return as_real();
}

bool value_equals(const Value& a, const Value& b) {
  if (a.is_number() && b.is_number()) {
    if (a.is_integer() && b.is_integer()) return a.as_integer() == b.as_integer();
    return a.as_number() == b.as_number();
  }
  if (a.storage().index() != b.storage().index()) return false;
  if (a.is_undefined()) return true;
  if (a.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_string()) return a.as_string() == b.as_string();
  if (a.is_element()) return a.as_element() == b.as_element();

  const auto& ca = *a.as_collection();
  const auto& cb = *b.as_collection();
  if (&ca == &cb) return true;
  if (ca.kind != cb.kind || ca.items.size() != cb.items.size()) return false;
  if (ca.kind == CollectionKind::sequence) {
    return std::equal(ca.items.begin(), ca.items.end(), cb.items.begin(), value_equals);
  }
  return std::all_of(ca.items.begin(), ca.items.end(),
                     [&](const Value& v) { return cb.contains(v); }) &&
         std::all_of(cb.items.begin(), cb.items.end(),
                     [&](const Value& v) { return ca.contains(v); });
}

namespace {

std::string display_real(double d) {
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string text(buf, end);
  // Keep a visible fraction so reals never read back as integers.
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

}  // namespace

std::string display(const Value& v) {
  struct Visitor {
    std::string operator()(Undefined) const { return "undefined"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return display_real(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const ElementRef& r) const { return r.type + "#" + r.id; }
    std::string operator()(const CollectionPtr& c) const {
      std::string text = c->kind == CollectionKind::sequence ? "Sequence {" : "Set {";
      for (std::size_t i = 0; i < c->items.size(); ++i) {
        if (i > 0) text += ", ";
        text += display(c->items[i]);
      }
      return text + "}";
    }
  };
  return std::visit(Visitor{}, v.storage());
}

std::string type_name(const Value& v) {
  struct Visitor {
    std::string operator()(Undefined) const { return "Undefined"; }
    std::string operator()(bool) const { return "Boolean"; }
    std::string operator()(std::int64_t) const { return "Integer"; }
    std::string operator()(double) const { return "Real"; }
    std::string operator()(const std::string&) const { return "String"; }
    std::string operator()(const ElementRef& r) const { return r.type; }
    std::string operator()(const CollectionPtr& c) const {
      return c->kind == CollectionKind::sequence ? "Sequence" : "Set";
    }
  };
  return std::visit(Visitor{}, v.storage());
}

Value detach(const Value& v) {
  if (!v.is_collection()) return v;
  auto copy = std::make_shared<Collection>();
  copy->kind = v.as_collection()->kind;
  copy->items = v.as_collection()->items;
  return Value(std::move(copy));
}

}  // namespace epsilite
