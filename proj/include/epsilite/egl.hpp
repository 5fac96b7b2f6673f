#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epsilite/eol/ast.hpp"
#include "epsilite/model.hpp"

namespace epsilite::egl {

/// Text copied to the output verbatim.
struct StaticSection {
  std::string text;
};

/// `[% statements %]`
struct DynamicSection {
  eol::Program program;
};

/// `[%= expression %]`
struct ShortcutSection {
  eol::ExprPtr expression;
};

struct Section {
  std::variant<StaticSection, DynamicSection, ShortcutSection> body;
  /// Exact source text of the section, tags included.
  std::string source;
  SourceLocation location;
};

struct Template {
  std::vector<Section> sections;
};

/// Splits a template into sections and parses the dynamic ones. Tags do not
/// nest; each dynamic section must be a complete statement list.
Template parse_egl(std::string_view text, const std::string& file = {});

struct RenderResult {
  std::string text;
  /// println/print output of the dynamic sections (not part of the text).
  std::string output;
  std::optional<RuntimeError> error;
};

/// Renders left to right in one shared context, so variables declared in a
/// section stay visible in the following ones. On a runtime error `text`
/// holds what was rendered before the failure.
RenderResult render(const Template& tmpl, Repository& repository);

}  // namespace epsilite::egl
