#include "epsilite/model_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "epsilite/lexer.hpp"

namespace epsilite {

namespace {

/// Cursor over a token vector shared by both file formats.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == TokenKind::end; }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::end) ++pos_;
    return t;
  }
  bool accept(std::string_view punct) {
    if (!peek().is(punct)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DiagnosticError(Diagnostic{Severity::error, message, peek().location});
  }
  const Token& expect(std::string_view punct) {
    if (!peek().is(punct)) fail("expected '" + std::string(punct) + "' but found " + describe(peek()));
    return advance();
  }
  const Token& expect_identifier(std::string_view what) {
    if (peek().kind != TokenKind::identifier) {
      fail("expected " + std::string(what) + " but found " + describe(peek()));
    }
    return advance();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::end: return "end of input";
      case TokenKind::string: return "string literal";
      default: return "'" + t.text + "'";
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct RawFeature {
  FeatureDef def;
  SourceLocation location;
  SourceLocation type_location;
};

struct RawClass {
  std::string name;
  SourceLocation location;
  std::optional<std::string> supertype;
  SourceLocation supertype_location;
  std::vector<RawFeature> features;
};

Diagnostic error_at(const SourceLocation& location, std::string message) {
  return Diagnostic{Severity::error, std::move(message), location};
}

}  // namespace

MetamodelPtr parse_metamodel(std::string_view text, std::string name, std::string file) {
  TokenCursor in(tokenize(normalize_newlines(text), LexerOptions{file}));
  std::vector<RawClass> classes;

  while (!in.at_end()) {
    if (!in.peek().is_identifier("class")) in.fail("expected 'class' but found " + TokenCursor::describe(in.peek()));
    in.advance();
    RawClass c;
    c.location = in.peek().location;
    c.name = in.expect_identifier("class name").text;
    if (in.peek().is_identifier("extends")) {
      in.advance();
      c.supertype_location = in.peek().location;
      c.supertype = in.expect_identifier("supertype name").text;
    }
    in.expect("{");
    while (!in.accept("}")) {
      RawFeature f;
      const Token& keyword = in.expect_identifier("'attr', 'val' or 'ref'");
      if (keyword.text == "attr") {
        f.def.kind = FeatureKind::attribute;
      } else if (keyword.text == "val") {
        f.def.kind = FeatureKind::containment;
      } else if (keyword.text == "ref") {
        f.def.kind = FeatureKind::reference;
      } else {
        throw DiagnosticError(error_at(keyword.location, "expected 'attr', 'val' or 'ref' but found '" + keyword.text + "'"));
      }
      f.location = in.peek().location;
      f.def.name = in.expect_identifier("feature name").text;
      in.expect(":");
      f.type_location = in.peek().location;
      f.def.value_type = in.expect_identifier("type name").text;
      if (in.accept("[")) {
        in.expect("*");
        in.expect("]");
        f.def.many = true;
      }
      in.expect(";");
      c.features.push_back(std::move(f));
    }
    classes.push_back(std::move(c));
  }

  std::vector<Diagnostic> problems;
  std::map<std::string, const RawClass*> by_name;
  for (const auto& c : classes) {
    if (!by_name.emplace(c.name, &c).second) {
      problems.push_back(error_at(c.location, "duplicate class " + c.name));
    }
  }
  for (const auto& c : classes) {
    if (c.supertype && !by_name.count(*c.supertype)) {
      problems.push_back(error_at(c.supertype_location, "unknown supertype " + *c.supertype));
    }
    std::set<std::string> own;
    for (const auto& f : c.features) {
      if (!own.insert(f.def.name).second) {
        problems.push_back(error_at(f.location, "duplicate feature " + f.def.name + " in " + c.name));
      }
      if (f.def.kind == FeatureKind::attribute) {
        if (!is_primitive_type(f.def.value_type)) {
          problems.push_back(error_at(f.type_location, "attribute " + f.def.name +
                                                           " must have type String, Integer, Real or Boolean"));
        }
      } else if (!by_name.count(f.def.value_type)) {
        problems.push_back(error_at(f.type_location, "unknown type " + f.def.value_type));
      }
    }
  }
  if (!problems.empty()) throw DiagnosticError(std::move(problems));

  for (const auto& c : classes) {
    std::set<std::string> seen{c.name};
    for (auto super = c.supertype; super; super = by_name.at(*super)->supertype) {
      if (!seen.insert(*super).second) {
        problems.push_back(error_at(c.location, "inheritance cycle involving " + c.name));
        break;
      }
    }
  }
  if (!problems.empty()) throw DiagnosticError(std::move(problems));

  // Features inherited from a supertype may not be redeclared.
  for (const auto& c : classes) {
    std::set<std::string> inherited;
    for (auto super = c.supertype; super; super = by_name.at(*super)->supertype) {
      for (const auto& f : by_name.at(*super)->features) inherited.insert(f.def.name);
    }
    for (const auto& f : c.features) {
      if (inherited.count(f.def.name)) {
        problems.push_back(error_at(f.location, "feature " + f.def.name + " of " + c.name +
                                                    " is already inherited"));
      }
    }
  }
  if (!problems.empty()) throw DiagnosticError(std::move(problems));

  std::vector<ClassDef> defs;
  for (auto& c : classes) {
    std::vector<FeatureDef> features;
    for (auto& f : c.features) features.push_back(std::move(f.def));
    defs.emplace_back(std::move(c.name), std::move(c.supertype), std::move(features));
  }
  return std::make_shared<const Metamodel>(std::move(name), std::move(defs));
}

namespace {

struct RawValue {
  enum class Kind { literal, identifier, list } kind = Kind::literal;
  Value literal;
  std::string identifier;
  std::vector<RawValue> items;
  SourceLocation location;
};

struct RawSlot {
  std::string feature;
  SourceLocation location;
  RawValue value;
};

struct RawElement {
  std::string id;
  SourceLocation id_location;
  std::string type;
  SourceLocation type_location;
  std::vector<RawSlot> slots;
};

RawValue parse_raw_value(TokenCursor& in) {
  RawValue v;
  v.location = in.peek().location;
  const Token& t = in.peek();
  if (t.is("[")) {
    in.advance();
    v.kind = RawValue::Kind::list;
    if (!in.accept("]")) {
      do {
        v.items.push_back(parse_raw_value(in));
      } while (in.accept(","));
      in.expect("]");
    }
    return v;
  }
  bool negative = false;
  if (t.is("-")) {
    in.advance();
    negative = true;
  }
  const Token& lit = in.peek();
  switch (lit.kind) {
    case TokenKind::integer:
      if (lit.min_magnitude) {
        if (!negative) in.fail("integer literal out of range: " + lit.text);
        v.literal = Value(lit.integer);
      } else {
        v.literal = negative ? Value(-lit.integer) : Value(lit.integer);
      }
      in.advance();
      return v;
    case TokenKind::real:
      v.literal = negative ? Value(-lit.real) : Value(lit.real);
      in.advance();
      return v;
    case TokenKind::string:
      if (negative) break;
      v.literal = Value(lit.text);
      in.advance();
      return v;
    case TokenKind::identifier:
      if (negative) break;
      if (lit.text == "true" || lit.text == "false") {
        v.literal = Value(lit.text == "true");
      } else {
        v.kind = RawValue::Kind::identifier;
        v.identifier = lit.text;
      }
      in.advance();
      return v;
    default:
      break;
  }
  in.fail("expected a value but found " + TokenCursor::describe(lit));
}

}  // namespace

Model parse_model(std::string_view text, MetamodelPtr metamodel, std::string name,
                  std::string file, Access access) {
  TokenCursor in(tokenize(normalize_newlines(text), LexerOptions{file}));
  std::vector<RawElement> raw;
  while (!in.at_end()) {
    RawElement e;
    e.id_location = in.peek().location;
    e.id = in.expect_identifier("element id").text;
    in.expect(":");
    e.type_location = in.peek().location;
    e.type = in.expect_identifier("class name").text;
    in.expect("{");
    while (!in.accept("}")) {
      RawSlot s;
      s.location = in.peek().location;
      s.feature = in.expect_identifier("feature name").text;
      in.expect("=");
      s.value = parse_raw_value(in);
      e.slots.push_back(std::move(s));
    }
    raw.push_back(std::move(e));
  }

  std::vector<Diagnostic> problems;
  Model model(std::move(name), metamodel, Access::read_write);
  std::vector<const RawElement*> created;
  for (const auto& e : raw) {
    if (e.id == "true" || e.id == "false") {
      problems.push_back(error_at(e.id_location, "'" + e.id + "' is not a valid element id"));
      continue;
    }
    if (model.contains(e.id)) {
      problems.push_back(error_at(e.id_location, "duplicate element id " + e.id));
      continue;
    }
    if (!metamodel->find_class(e.type)) {
      problems.push_back(error_at(e.type_location, "unknown class " + e.type));
      continue;
    }
    model.instantiate(e.type, e.id);
    created.push_back(&e);
  }

  std::map<std::string, SourceLocation> contained_at;
  for (const RawElement* e : created) {
    const ClassDef& type = *model.find(e->id)->type;
    std::set<std::string> assigned;
    for (const auto& slot : e->slots) {
      const FeatureDef* f = type.find_feature(slot.feature);
      if (!f) {
        problems.push_back(error_at(slot.location, "unknown feature " + slot.feature + " on " + type.name()));
        continue;
      }
      if (!assigned.insert(slot.feature).second) {
        problems.push_back(error_at(slot.location, "feature " + slot.feature + " assigned twice"));
        continue;
      }

      bool ok = true;
      auto convert = [&](const RawValue& rv) -> Value {
        if (rv.kind == RawValue::Kind::identifier) {
          const ModelElement* target = model.find(rv.identifier);
          if (!target) {
            problems.push_back(error_at(rv.location, "unknown element id " + rv.identifier));
            ok = false;
            return Value();
          }
          if (f->kind == FeatureKind::containment) {
            auto [it, fresh] = contained_at.emplace(rv.identifier, rv.location);
            if (!fresh) {
              problems.push_back(error_at(rv.location, "element " + rv.identifier + " is contained twice"));
              ok = false;
            }
          }
          return model.ref(*target);
        }
        if (rv.kind == RawValue::Kind::list) {
          problems.push_back(error_at(rv.location, "nested lists are not allowed"));
          ok = false;
          return Value();
        }
        return rv.literal;
      };

      Value value;
      if (slot.value.kind == RawValue::Kind::list) {
        std::vector<Value> items;
        for (const auto& item : slot.value.items) items.push_back(convert(item));
        value = Value::sequence(std::move(items));
      } else {
        value = convert(slot.value);
      }
      if (!ok) continue;
      try {
        model.set_feature(e->id, slot.feature, value);
      } catch (const ModelError& err) {
        problems.push_back(error_at(slot.value.location, err.what()));
      }
    }
  }
  if (!problems.empty()) throw DiagnosticError(std::move(problems));
  model.set_access(access);
  return model;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string format_value(const Value& v) {
  if (v.is_string()) return quote(v.as_string());
  if (v.is_element()) return v.as_element().id;
  if (v.is_collection()) {
    std::string out = "[";
    const auto& items = v.as_collection()->items;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_value(items[i]);
    }
    return out + "]";
  }
  return display(v);
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::string out;
  for (const auto& e : model.elements()) {
    std::string body;
    for (const FeatureDef* f : e.type->features()) {
      const Value& v = e.slots.at(f->name);
      if (v.is_undefined()) continue;
      if (v.is_collection() && v.as_collection()->items.empty()) continue;
      body += "  " + f->name + " = " + format_value(v) + "\n";
    }
    out += e.id + " : " + e.type->name();
    out += body.empty() ? " {}\n" : " {\n" + body + "}\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return normalize_newlines(buffer.str());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

MetamodelPtr load_metamodel(const std::filesystem::path& path) {
  return parse_metamodel(read_text_file(path), path.stem().string(), path.string());
}

Model load_model(const std::filesystem::path& path, MetamodelPtr metamodel, std::string name,
                 Access access) {
  return parse_model(read_text_file(path), std::move(metamodel), std::move(name), path.string(),
                     access);
}

}  // namespace epsilite
