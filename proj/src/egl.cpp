#include "epsilite/egl.hpp"

#include "epsilite/eol/interpreter.hpp"
#include "epsilite/eol/parser.hpp"
#include "epsilite/lexer.hpp"

namespace epsilite::egl {

namespace {

void advance_location(SourceLocation& location, std::string_view text) {
  for (char c : text) {
    if (c == '\n') {
      ++location.line;
      location.column = 1;
    } else {
      ++location.column;
    }
  }
}

}  // namespace

Template parse_egl(std::string_view raw, const std::string& file) {
  const std::string text = normalize_newlines(raw);
  Template tmpl;
  SourceLocation cursor{file, 1, 1};
  std::vector<eol::OperationPtr> all_operations;
  std::size_t pos = 0;

  while (pos < text.size()) {
    std::size_t open = text.find("[%", pos);
    if (open != pos) {
      std::size_t end = open == std::string::npos ? text.size() : open;
      Section s{StaticSection{text.substr(pos, end - pos)}, text.substr(pos, end - pos), cursor};
      advance_location(cursor, s.source);
      tmpl.sections.push_back(std::move(s));
      pos = end;
      continue;
    }

    bool shortcut = text.compare(open, 3, "[%=") == 0;
    std::size_t content_start = open + (shortcut ? 3 : 2);
    std::size_t close = text.find("%]", content_start);
    if (close == std::string::npos) {
      throw DiagnosticError(Diagnostic{Severity::error, "unterminated template tag", cursor});
    }

    SourceLocation content_location = cursor;
    advance_location(content_location, text.substr(open, content_start - open));
    std::string_view content = std::string_view(text).substr(content_start, close - content_start);
    LexerOptions options{file, true, content_location.line, content_location.column};
    eol::Parser parser(tokenize(content, options));

    Section s;
    s.source = text.substr(open, close + 2 - open);
    s.location = cursor;
    if (shortcut) {
      eol::ExprPtr expr = parser.parse_expression();
      parser.accept(";");
      if (!parser.at_end()) parser.fail("unexpected input after template expression");
      s.body = ShortcutSection{std::move(expr)};
    } else {
      eol::Program program = parser.parse_program();
      all_operations.insert(all_operations.end(), program.operations.begin(),
                            program.operations.end());
      s.body = DynamicSection{std::move(program)};
    }
    advance_location(cursor, s.source);
    tmpl.sections.push_back(std::move(s));
    pos = close + 2;
  }

  eol::check_operation_signatures(all_operations);
  return tmpl;
}

RenderResult render(const Template& tmpl, Repository& repository) {
  RenderResult result;
  eol::ExecutionContext ctx(repository);
  ctx.enable_template_output(&result.text);
  for (const auto& section : tmpl.sections) {
    if (auto* dynamic = std::get_if<DynamicSection>(&section.body)) {
      ctx.add_operations(dynamic->program.operations);
    }
  }

  try {
    for (const auto& section : tmpl.sections) {
      if (auto* s = std::get_if<StaticSection>(&section.body)) {
        result.text += s->text;
      } else if (auto* d = std::get_if<DynamicSection>(&section.body)) {
        ctx.execute(d->program.statements);
      } else {
        const auto& shortcut = std::get<ShortcutSection>(section.body);
        result.text += display(ctx.evaluate(*shortcut.expression));
      }
    }
  } catch (const RuntimeError& e) {
    result.error = e;
  }
  result.output = ctx.output();
  return result;
}

}  // namespace epsilite::egl
