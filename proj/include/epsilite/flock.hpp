#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "epsilite/eol/ast.hpp"
#include "epsilite/model.hpp"

namespace epsilite::flock {

/// Model names visible inside a strategy.
inline constexpr std::string_view kOriginalModel = "Original";
inline constexpr std::string_view kMigratedModel = "Migrated";

struct MigrateRule {
  eol::TypeRef type;
  eol::Block body;
};

/// `delete T when: guard`
struct DeleteRule {
  eol::TypeRef type;
  eol::ExprPtr when;
};

struct Rule {
  std::variant<MigrateRule, DeleteRule> body;
  SourceLocation location;
};

struct Strategy {
  std::vector<Rule> rules;
  std::vector<eol::OperationPtr> operations;
};

Strategy parse_flock(std::string_view text, const std::string& file = {});

/// Original element id -> migrated element id, in allocation order.
class EquivalenceMap {
 public:
  void add(const std::string& original, const std::string& migrated);
  std::optional<std::string> lookup(std::string_view original) const;
  const std::vector<std::pair<std::string, std::string>>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::unordered_map<std::string, std::string> index_;
};

/// Maps an original element (or a collection of them) to its migrated
/// counterpart. Unmapped elements become Undefined or are left out of
/// collections. Throws ModelError for primitive values.
Value equivalent(const EquivalenceMap& map, const Model& original, const Model& migrated,
                 const Value& value);

struct MigrationResult {
  Model migrated;
  EquivalenceMap map;
  /// println/print output of rule bodies and guards.
  std::string output;
};

/// Produces a new model conforming to `target` in three passes: allocate
/// (delete guards, same-named classes only), conservative copy of compatible
/// features, then migrate rule bodies. `original` is never modified.
/// Throws RuntimeError on script errors and ModelError when the result does
/// not conform.
MigrationResult migrate_model(const Strategy& strategy, const Model& original,
                              MetamodelPtr target);

}  // namespace epsilite::flock
