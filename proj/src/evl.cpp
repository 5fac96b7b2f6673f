#include "epsilite/evl.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "epsilite/eol/interpreter.hpp"
#include "epsilite/eol/parser.hpp"

namespace epsilite::evl {

namespace {

Fix parse_fix(eol::Parser& parser) {
  Fix fix;
  fix.location = parser.expect_keyword("fix").location;
  parser.expect("{");
  if (parser.peek().is_identifier("title")) {
    parser.advance();
    parser.expect(":");
    fix.title = parser.parse_expression();
  }
  if (!parser.peek().is_identifier("do")) parser.fail("fix is missing its 'do' block");
  parser.advance();
  fix.body = parser.parse_block();
  parser.expect("}");
  return fix;
}

Constraint parse_constraint(eol::Parser& parser) {
  Constraint c;
  parser.expect_keyword("constraint");
  c.location = parser.peek().location;
  c.name = parser.expect_identifier("constraint name").text;
  parser.expect("{");
  if (!parser.peek().is_identifier("check")) parser.fail("constraint " + c.name + " has no check");
  parser.advance();
  parser.expect(":");
  c.check = parser.parse_expression();
  if (parser.peek().is_identifier("message")) {
    parser.advance();
    parser.expect(":");
    c.message = parser.parse_expression();
  }
  while (parser.peek().is_identifier("fix")) c.fixes.push_back(parse_fix(parser));
  parser.expect("}");
  return c;
}

class ReadOnlyGuard {
 public:
  explicit ReadOnlyGuard(Repository& repository) : repository_(repository) {
    for (const auto& m : repository_.models()) {
      saved_.push_back(m->access());
      m->set_access(Access::read_only);
    }
  }
  ~ReadOnlyGuard() {
    for (std::size_t i = 0; i < saved_.size(); ++i) repository_.models()[i]->set_access(saved_[i]);
  }
  ReadOnlyGuard(const ReadOnlyGuard&) = delete;
  ReadOnlyGuard& operator=(const ReadOnlyGuard&) = delete;

 private:
  Repository& repository_;
  std::vector<Access> saved_;
};

}  // namespace

ConstraintCatalog parse_evl(std::string_view text, const std::string& file) {
  eol::Parser parser(text, file);
  ConstraintCatalog catalog;
  while (!parser.at_end()) {
    if (parser.at_operation()) {
      catalog.operations.push_back(parser.parse_operation());
      continue;
    }
    parser.expect_keyword("context");
    ContextBlock block;
    block.type = parser.parse_type_ref();
    parser.expect("{");
    std::set<std::string> names;
    while (!parser.accept("}")) {
      Constraint c = parse_constraint(parser);
      if (!names.insert(c.name).second) {
        parser.fail_at(c.location, "duplicate constraint " + c.name + " in context " +
                                       block.type.to_string());
      }
      block.constraints.push_back(std::move(c));
    }
    catalog.contexts.push_back(std::move(block));
  }
  eol::check_operation_signatures(catalog.operations);
  return catalog;
}

ValidationReport validate(const ConstraintCatalog& catalog, Repository& repository) {
  ReadOnlyGuard guard(repository);
  eol::ExecutionContext ctx(repository);
  ctx.add_operations(catalog.operations);

  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::vector<std::pair<Key, Violation>> found;

  for (std::size_t ci = 0; ci < catalog.contexts.size(); ++ci) {
    const ContextBlock& block = catalog.contexts[ci];
    eol::ResolvedType resolved = ctx.resolve_type(block.type);
    std::size_t model_index = 0;
    while (repository.models()[model_index].get() != resolved.model) ++model_index;

    const auto& elements = resolved.model->elements();
    for (std::size_t ei = 0; ei < elements.size(); ++ei) {
      if (!elements[ei].type->conforms_to(*resolved.type)) continue;
      ElementRef self = resolved.model->ref(elements[ei]);
      for (std::size_t k = 0; k < block.constraints.size(); ++k) {
        const Constraint& c = block.constraints[k];
        eol::ExecutionContext::Scope scope(ctx);
        ctx.define("self", self);
        Value ok = ctx.evaluate(*c.check);
        if (!ok.is_bool()) {
          throw RuntimeError("check of " + c.name + " must be Boolean, got " + type_name(ok),
                             c.check->location);
        }
        if (ok.as_bool()) continue;

        Violation v;
        v.element = self;
        v.constraint = c.name;
        v.message = c.message ? display(ctx.evaluate(*c.message))
                              : "Unsatisfied constraint " + c.name + " on " + display(self);
        for (std::size_t f = 0; f < c.fixes.size(); ++f) {
          v.fix_titles.push_back(c.fixes[f].title ? display(ctx.evaluate(*c.fixes[f].title))
                                                  : "Fix " + std::to_string(f));
        }
        v.context_index = ci;
        v.constraint_index = k;
        found.emplace_back(Key{model_index, ei, ci, k}, std::move(v));
      }
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ValidationReport report;
  for (auto& [key, v] : found) report.violations.push_back(std::move(v));
  return report;
}

void apply_fix(const ConstraintCatalog& catalog, Repository& repository,
               const Violation& violation, std::size_t fix_index) {
  if (violation.context_index >= catalog.contexts.size() ||
      violation.constraint_index >= catalog.contexts[violation.context_index].constraints.size()) {
    throw FixError("violation does not belong to this catalog");
  }
  const Constraint& c =
      catalog.contexts[violation.context_index].constraints[violation.constraint_index];
  if (fix_index >= c.fixes.size()) {
    throw FixError("fix index " + std::to_string(fix_index) + " out of range for " + c.name +
                   " (" + std::to_string(c.fixes.size()) + " fix(es))");
  }
  const Model* model = repository.find(violation.element.model);
  if (!model || !model->contains(violation.element.id)) {
    throw FixError("stale violation: " + display(violation.element) + " no longer exists");
  }

  eol::ExecutionContext ctx(repository);
  ctx.add_operations(catalog.operations);
  eol::ExecutionContext::Scope scope(ctx);
  ctx.define("self", violation.element);
  ctx.execute(c.fixes[fix_index].body);
}

std::string format_report(const ValidationReport& report) {
  std::string text;
  for (const auto& v : report.violations) {
    text += "VIOLATION " + v.constraint + " " + display(v.element) + ": " + v.message + "\n";
    for (std::size_t k = 0; k < v.fix_titles.size(); ++k) {
      text += "  fix[" + std::to_string(k) + "]: " + v.fix_titles[k] + "\n";
    }
  }
  return text;
}

}  // namespace epsilite::evl
