#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "epsilite/eol/ast.hpp"
#include "epsilite/model.hpp"

namespace epsilite::evl {

struct Fix {
  eol::ExprPtr title;  // may be null
  eol::Block body;
  SourceLocation location;
};

struct Constraint {
  std::string name;
  eol::ExprPtr check;
  eol::ExprPtr message;  // may be null
  std::vector<Fix> fixes;
  SourceLocation location;
};

struct ContextBlock {
  eol::TypeRef type;
  std::vector<Constraint> constraints;
};

struct ConstraintCatalog {
  std::vector<ContextBlock> contexts;
  std::vector<eol::OperationPtr> operations;
};

/// context T { constraint N { check: e  message: e  fix { title: e  do { ... } } } }
/// with EOL operations allowed between contexts.
ConstraintCatalog parse_evl(std::string_view text, const std::string& file = {});

struct Violation {
  ElementRef element;
  std::string constraint;
  std::string message;
  std::vector<std::string> fix_titles;
  std::size_t context_index = 0;
  std::size_t constraint_index = 0;
};

struct ValidationReport {
  /// Ordered by element creation order, then constraint declaration order.
  std::vector<Violation> violations;
};

/// Evaluates every constraint on every instance of its context type. All
/// models are held read-only for the duration. Throws RuntimeError when a
/// check or message fails to evaluate.
ValidationReport validate(const ConstraintCatalog& catalog, Repository& repository);

/// Raised for fixes that cannot be applied (stale violation, bad index).
class FixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs fix `fix_index` of the violated constraint with `self` bound to the
/// offending element.
void apply_fix(const ConstraintCatalog& catalog, Repository& repository,
               const Violation& violation, std::size_t fix_index);

/// `VIOLATION <Constraint> <Class>#<id>: <message>` lines, each followed by
/// `  fix[<k>]: <title>` lines.
std::string format_report(const ValidationReport& report);

}  // namespace epsilite::evl
