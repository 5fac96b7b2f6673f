#include "epsilite/lexer.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace epsilite {

std::string normalize_newlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    out += text[i];
  }
  return out;
}

namespace {

class Scanner {
 public:
  Scanner(std::string_view text, const LexerOptions& options)
      : text_(text), options_(options), line_(options.first_line), column_(options.first_column) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_trivia();
      Token token;
      token.location = here();
      if (at_end()) {
        tokens.push_back(std::move(token));
        return tokens;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        token.kind = TokenKind::identifier;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          token.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        number(token);
      } else if (c == '"' || c == '\'') {
        string(token);
      } else {
        punct(token);
      }
      tokens.push_back(std::move(token));
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  SourceLocation here() const { return SourceLocation{options_.file, line_, column_}; }

  [[noreturn]] void fail(const std::string& message, SourceLocation at) const {
    throw DiagnosticError(Diagnostic{Severity::error, message, std::move(at)});
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if ((c == '/' && peek(1) == '/') ||
                 (options_.dash_comments && c == '-' && peek(1) == '-')) {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  void number(Token& token) {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    bool real = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      real = true;
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      real = true;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    std::string_view spelling = text_.substr(start, pos_ - start);
    token.text = std::string(spelling);
    if (real) {
      token.kind = TokenKind::real;
      auto [ptr, ec] = std::from_chars(spelling.data(), spelling.data() + spelling.size(), token.real);
      if (ec != std::errc()) fail("real literal out of range: " + token.text, token.location);
    } else {
      token.kind = TokenKind::integer;
      auto [ptr, ec] =
          std::from_chars(spelling.data(), spelling.data() + spelling.size(), token.integer);
      if (ec == std::errc::result_out_of_range && spelling == "9223372036854775808") {
        token.integer = std::numeric_limits<std::int64_t>::min();
        token.min_magnitude = true;
      } else if (ec != std::errc()) {
        fail("integer literal out of range: " + token.text, token.location);
      }
    }
  }

  void string(Token& token) {
    token.kind = TokenKind::string;
    char quote = advance();
    for (;;) {
      if (at_end()) fail("unterminated string literal", token.location);
      char c = advance();
      if (c == quote) return;
      if (c != '\\') {
        token.text += c;
        continue;
      }
      if (at_end()) fail("unterminated string literal", token.location);
      char e = advance();
      switch (e) {
        case 'n': token.text += '\n'; break;
        case 't': token.text += '\t'; break;
        case 'r': token.text += '\r'; break;
        case '"': token.text += '"'; break;
        case '\'': token.text += '\''; break;
        case '\\': token.text += '\\'; break;
        default: fail(std::string("unknown escape sequence \\") + e, token.location);
      }
    }
  }

  void punct(Token& token) {
    token.kind = TokenKind::punct;
    static constexpr std::string_view two_char[] = {"==", "<>", "<=", ">="};
    for (auto op : two_char) {
      if (text_.substr(pos_, 2) == op) {
        token.text = std::string(op);
        advance();
        advance();
        return;
      }
    }
    static constexpr std::string_view single = "(){}[],;:.|!=+-*/@<>";
    char c = peek();
    if (single.find(c) == std::string_view::npos) {
      fail(std::string("unexpected character '") + c + "'", token.location);
    }
    token.text = std::string(1, advance());
  }

  std::string_view text_;
  const LexerOptions& options_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const LexerOptions& options) {
  return Scanner(text, options).run();
}

}  // namespace epsilite
