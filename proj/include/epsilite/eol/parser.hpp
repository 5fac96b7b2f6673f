#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "epsilite/eol/ast.hpp"
#include "epsilite/lexer.hpp"

namespace epsilite::eol {

/// Recursive-descent parser for EOL statements, expressions and operations.
/// The template, validation and migration dialects drive it directly for
/// the parts they share with EOL. All errors throw DiagnosticError.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens);
  Parser(std::string_view text, const std::string& file);

  /// Statements and operations up to the end of input.
  Program parse_program();

  ExprPtr parse_expression();
  StmtPtr parse_statement();
  /// `{ statement* }`
  Block parse_block();
  TypeRef parse_type_ref();

  bool at_operation() const;
  /// `[@cached] operation [Context] name(params) [: Type] { ... }`
  OperationPtr parse_operation();

  const Token& peek(std::size_t ahead = 0) const;
  const Token& advance();
  bool at_end() const { return peek().kind == TokenKind::end; }
  bool accept(std::string_view punct);
  const Token& expect(std::string_view punct);
  const Token& expect_identifier(std::string_view what);
  const Token& expect_keyword(std::string_view keyword);
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const SourceLocation& location, const std::string& message) const;

 private:
  Block parse_body();
  ExprPtr parse_or();
  ExprPtr parse_and();
  ExprPtr parse_comparison();
  ExprPtr parse_additive();
  ExprPtr parse_multiplicative();
  ExprPtr parse_unary();
  ExprPtr parse_postfix();
  ExprPtr parse_primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int loop_depth_ = 0;
};

/// Diagnoses operations sharing (context, name, arity).
void check_operation_signatures(const std::vector<OperationPtr>& operations);

Program parse_eol(std::string_view text, const std::string& file = {});

/// Reserved words that cannot be used as variable names.
bool is_keyword(std::string_view word);

}  // namespace epsilite::eol
