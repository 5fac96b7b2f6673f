#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "epsilite/diagnostic.hpp"

namespace epsilite {

enum class TokenKind { identifier, integer, real, string, punct, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;  // identifier/punctuation spelling, decoded string contents
  std::int64_t integer = 0;
  double real = 0.0;
  /// 9223372036854775808: representable only when negated. `integer` then
  /// holds the minimum value and parsers must see a leading minus.
  bool min_magnitude = false;
  SourceLocation location;

  bool is(std::string_view punct) const { return kind == TokenKind::punct && text == punct; }
  bool is_identifier(std::string_view name) const {
    return kind == TokenKind::identifier && text == name;
  }
};

struct LexerOptions {
  std::string file;
  /// Also treat `-- ...` as a line comment (EOL dialects).
  bool dash_comments = false;
  /// Position of the first character, for text embedded in another file.
  int first_line = 1;
  int first_column = 1;
};

/// Tokenizes the whole input; the result always ends with an `end` token.
/// Throws DiagnosticError on malformed literals or stray characters.
std::vector<Token> tokenize(std::string_view text, const LexerOptions& options = {});

/// Strips carriage returns that precede a line feed.
std::string normalize_newlines(std::string_view text);

}  // namespace epsilite
