#include "epsilite/flock.hpp"

#include <climits>

#include "epsilite/eol/interpreter.hpp"
#include "epsilite/eol/parser.hpp"

namespace epsilite::flock {

Strategy parse_flock(std::string_view text, const std::string& file) {
  eol::Parser parser(text, file);
  Strategy strategy;
  while (!parser.at_end()) {
    if (parser.at_operation()) {
      strategy.operations.push_back(parser.parse_operation());
      continue;
    }
    SourceLocation location = parser.peek().location;
    if (parser.peek().is_identifier("migrate")) {
      parser.advance();
      MigrateRule rule;
      rule.type = parser.parse_type_ref();
      rule.body = parser.parse_block();
      strategy.rules.push_back(Rule{std::move(rule), location});
    } else if (parser.peek().is_identifier("delete")) {
      parser.advance();
      DeleteRule rule;
      rule.type = parser.parse_type_ref();
      parser.expect_keyword("when");
      parser.expect(":");
      rule.when = parser.parse_expression();
      parser.accept(";");
      strategy.rules.push_back(Rule{std::move(rule), location});
    } else {
      parser.fail("expected 'migrate', 'delete' or 'operation'");
    }
  }
  eol::check_operation_signatures(strategy.operations);
  return strategy;
}

void EquivalenceMap::add(const std::string& original, const std::string& migrated) {
  if (!index_.emplace(original, migrated).second) {
    throw ModelError("element " + original + " already has an equivalent");
  }
  pairs_.emplace_back(original, migrated);
}

std::optional<std::string> EquivalenceMap::lookup(std::string_view original) const {
  auto it = index_.find(std::string(original));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Value equivalent(const EquivalenceMap& map, const Model& original, const Model& migrated,
                 const Value& value) {
  if (value.is_undefined()) return value;
  if (value.is_element()) {
    const ElementRef& ref = value.as_element();
    if (ref.model != original.name()) {
      throw ModelError("equivalent() expects an element of model " + original.name() + ", got " +
                       display(value) + " from " + ref.model);
    }
    auto target = map.lookup(ref.id);
    if (!target || !migrated.contains(*target)) return Value();
    return migrated.ref(*target);
  }
  if (value.is_collection()) {
    std::vector<Value> mapped;
    for (const auto& item : value.as_collection()->items) {
      Value m = equivalent(map, original, migrated, item);
      if (!m.is_undefined()) mapped.push_back(std::move(m));
    }
    return Value::collection(value.as_collection()->kind, std::move(mapped));
  }
  throw ModelError("equivalent() is not defined for " + type_name(value));
}

namespace {

struct BoundRule {
  const Rule* rule;
  const ClassDef* type;
};

/// Most specific rule for `type` (fewest inheritance steps, then declaration order).
template <typename Kind>
const BoundRule* best_rule(const std::vector<BoundRule>& rules, const ClassDef& type) {
  const BoundRule* best = nullptr;
  int best_distance = INT_MAX;
  for (const auto& r : rules) {
    if (!std::holds_alternative<Kind>(r.rule->body)) continue;
    auto distance = type.distance_to(*r.type);
    if (distance && *distance < best_distance) {
      best = &r;
      best_distance = *distance;
    }
  }
  return best;
}

bool attribute_types_compatible(const std::string& from, const std::string& to) {
  return from == to || (from == "Integer" && to == "Real");
}

bool copyable(const FeatureDef& from, const FeatureDef& to) {
  if (from.many != to.many) return false;
  bool from_attr = from.kind == FeatureKind::attribute;
  bool to_attr = to.kind == FeatureKind::attribute;
  if (from_attr != to_attr) return false;
  return !from_attr || attribute_types_compatible(from.value_type, to.value_type);
}

}  // namespace

MigrationResult migrate_model(const Strategy& strategy, const Model& original,
                              MetamodelPtr target) {
  Repository repository;
  Model source_copy = original;
  source_copy.set_name(std::string(kOriginalModel));
  source_copy.set_access(Access::read_only);
  Model& source = repository.add(std::move(source_copy));
  Model& migrated = repository.add(Model(std::string(kMigratedModel), target, Access::read_write));

  EquivalenceMap map;
  eol::ExecutionContext ctx(repository);
  ctx.add_operations(strategy.operations);
  ctx.set_default_model(std::string(kOriginalModel));
  ctx.set_equivalent([&](const Value& v) { return equivalent(map, source, migrated, v); });

  std::vector<BoundRule> rules;
  for (const auto& rule : strategy.rules) {
    const eol::TypeRef& type = std::visit([](const auto& r) -> const eol::TypeRef& { return r.type; },
                                          rule.body);
    if (type.model && *type.model != kOriginalModel) {
      throw RuntimeError("rules must apply to types of " + std::string(kOriginalModel),
                         type.location);
    }
    const ClassDef* cls = source.metamodel().find_class(type.name);
    if (!cls) throw RuntimeError("unknown type " + type.to_string(), type.location);
    rules.push_back(BoundRule{&rule, cls});
  }

  // Allocate.
  for (const auto& e : source.elements()) {
    if (const BoundRule* del = best_rule<DeleteRule>(rules, *e.type)) {
      const auto& guard = std::get<DeleteRule>(del->rule->body).when;
      eol::ExecutionContext::Scope scope(ctx);
      ctx.define("original", source.ref(e));
      Value when = ctx.evaluate(*guard);
      if (!when.is_bool()) {
        throw RuntimeError("delete guard must be Boolean, got " + type_name(when), guard->location);
      }
      if (when.as_bool()) continue;
    }
    if (!target->find_class(e.type->name())) continue;
    migrated.instantiate(e.type->name(), e.id);
    map.add(e.id, e.id);
  }

  // Conservative copy.
  for (const auto& [from_id, to_id] : map.pairs()) {
    const ModelElement& from = *source.find(from_id);
    const ClassDef& to_type = *migrated.find(to_id)->type;
    for (const FeatureDef* f : from.type->features()) {
      const FeatureDef* g = to_type.find_feature(f->name);
      if (!g || !copyable(*f, *g)) continue;
      Value value = source.get_feature(from_id, f->name);
      if (g->kind != FeatureKind::attribute) {
        const ClassDef* expected = target->find_class(g->value_type);
        auto conforms = [&](const Value& v) {
          return v.is_element() &&
                 migrated.find(v.as_element().id)->type->conforms_to(*expected);
        };
        Value mapped = equivalent(map, source, migrated, value);
        if (mapped.is_collection()) {
          std::vector<Value> kept;
          for (const auto& item : mapped.as_collection()->items) {
            if (conforms(item)) kept.push_back(item);
          }
          mapped = Value::sequence(std::move(kept));
        } else if (!conforms(mapped)) {
          mapped = Value();
        }
        value = std::move(mapped);
      }
      migrated.set_feature(to_id, g->name, value);
    }
  }

  // Migrate.
  for (const auto& [from_id, to_id] : map.pairs()) {
    const ModelElement& from = *source.find(from_id);
    const BoundRule* rule = best_rule<MigrateRule>(rules, *from.type);
    if (!rule) continue;
    eol::ExecutionContext::Scope scope(ctx);
    ctx.define("original", source.ref(from_id));
    ctx.define("migrated", migrated.ref(to_id));
    ctx.execute(std::get<MigrateRule>(rule->rule->body).body);
  }

  auto problems = migrated.audit();
  if (!problems.empty()) {
    std::string message = "migrated model does not conform:";
    for (const auto& p : problems) message += "\n  " + p;
    throw ModelError(message);
  }

  return MigrationResult{std::move(migrated), std::move(map), ctx.output()};
}

}  // namespace epsilite::flock
