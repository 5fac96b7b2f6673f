#include "epsilite/eol/parser.hpp"

#include <set>
#include <tuple>

namespace epsilite::eol {

std::string TypeRef::to_string() const {
  std::string text = model ? *model + "!" + name : name;
  if (!arguments.empty()) {
    text += "(";
    for (std::size_t i = 0; i < arguments.size(); ++i) {
      if (i > 0) text += ", ";
      text += arguments[i].to_string();
    }
    text += ")";
  }
  return text;
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "<>";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::and_: return "and";
    case BinaryOp::or_: return "or";
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  static const std::set<std::string_view> keywords = {
      "var", "for", "in", "if", "else", "continue", "delete", "return", "operation",
      "new", "and", "or", "not", "true", "false"};
  return keywords.count(word) > 0;
}

namespace {

bool is_lambda_operation(std::string_view name) {
  return name == "select" || name == "selectOne" || name == "exists" || name == "collect";
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::string: return "string literal";
    default: return "'" + t.text + "'";
  }
}

template <typename Node>
ExprPtr make_expr(Node node, SourceLocation location) {
  return std::make_unique<Expr>(Expr{std::move(node), std::move(location)});
}

template <typename Node>
StmtPtr make_stmt(Node node, SourceLocation location) {
  return std::make_unique<Stmt>(Stmt{std::move(node), std::move(location)});
}

}  // namespace

Parser::Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::end) tokens_.emplace_back();
}

Parser::Parser(std::string_view text, const std::string& file)
    : Parser(tokenize(normalize_newlines(text), LexerOptions{file, true})) {}

const Token& Parser::peek(std::size_t ahead) const {
  std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

const Token& Parser::advance() {
  const Token& t = tokens_[pos_];
  if (t.kind != TokenKind::end) ++pos_;
  return t;
}

bool Parser::accept(std::string_view punct) {
  if (!peek().is(punct)) return false;
  advance();
  return true;
}

const Token& Parser::expect(std::string_view punct) {
  if (!peek().is(punct)) fail("expected '" + std::string(punct) + "' but found " + describe(peek()));
  return advance();
}

const Token& Parser::expect_identifier(std::string_view what) {
  if (peek().kind != TokenKind::identifier || is_keyword(peek().text)) {
    fail("expected " + std::string(what) + " but found " + describe(peek()));
  }
  return advance();
}

const Token& Parser::expect_keyword(std::string_view keyword) {
  if (!peek().is_identifier(keyword)) {
    fail("expected '" + std::string(keyword) + "' but found " + describe(peek()));
  }
  return advance();
}

void Parser::fail(const std::string& message) const { fail_at(peek().location, message); }

void Parser::fail_at(const SourceLocation& location, const std::string& message) const {
  throw DiagnosticError(Diagnostic{Severity::error, message, location});
}

Program Parser::parse_program() {
  Program program;
  while (!at_end()) {
    if (at_operation()) {
      program.operations.push_back(parse_operation());
    } else {
      program.statements.push_back(parse_statement());
    }
  }
  check_operation_signatures(program.operations);
  return program;
}

bool Parser::at_operation() const {
  return peek().is("@") || peek().is_identifier("operation");
}

OperationPtr Parser::parse_operation() {
  auto op = std::make_shared<OperationDef>();
  op->location = peek().location;
  while (accept("@")) {
    const Token& annotation = peek();
    if (annotation.kind != TokenKind::identifier) fail("expected annotation name");
    if (annotation.text != "cached") fail("unknown annotation @" + annotation.text);
    advance();
    op->cached = true;
  }
  expect_keyword("operation");

  // The context type is optional: `operation name()` applies to any receiver.
  if (peek().kind == TokenKind::identifier && peek(1).is("(")) {
    op->context = TypeRef{std::nullopt, "Any", {}, peek().location};
  } else {
    op->context = parse_type_ref();
  }
  op->name = expect_identifier("operation name").text;
  expect("(");
  std::set<std::string> seen;
  if (!accept(")")) {
    do {
      const Token& name = expect_identifier("parameter name");
      if (name.text == "self") fail_at(name.location, "'self' cannot be a parameter name");
      if (!seen.insert(name.text).second) fail_at(name.location, "duplicate parameter " + name.text);
      Parameter p{name.text, std::nullopt};
      if (accept(":")) p.type = parse_type_ref();
      op->params.push_back(std::move(p));
    } while (accept(","));
    expect(")");
  }
  if (accept(":")) op->return_type = parse_type_ref();

  int saved_depth = loop_depth_;
  loop_depth_ = 0;
  op->body = parse_block();
  loop_depth_ = saved_depth;
  return op;
}

TypeRef Parser::parse_type_ref() {
  TypeRef type;
  type.location = peek().location;
  type.name = expect_identifier("type name").text;
  if (accept("!")) {
    type.model = std::move(type.name);
    type.name = expect_identifier("type name").text;
  }
  if (accept("(")) {
    do {
      type.arguments.push_back(parse_type_ref());
    } while (accept(","));
    expect(")");
  }
  return type;
}

Block Parser::parse_block() {
  expect("{");
  Block block;
  while (!accept("}")) {
    if (at_end()) fail("expected '}' but found end of input");
    block.push_back(parse_statement());
  }
  return block;
}

Block Parser::parse_body() {
  if (peek().is("{")) return parse_block();
  Block block;
  block.push_back(parse_statement());
  return block;
}

StmtPtr Parser::parse_statement() {
  SourceLocation location = peek().location;
  const Token& t = peek();

  if (t.is_identifier("var")) {
    advance();
    VarDeclStmt decl;
    decl.name = expect_identifier("variable name").text;
    if (accept(":")) decl.type = parse_type_ref();
    if (accept("=")) decl.init = parse_expression();
    expect(";");
    return make_stmt(std::move(decl), location);
  }
  if (t.is_identifier("for")) {
    advance();
    ForStmt loop;
    expect("(");
    loop.variable = expect_identifier("loop variable").text;
    expect_keyword("in");
    loop.iterable = parse_expression();
    expect(")");
    ++loop_depth_;
    loop.body = parse_body();
    --loop_depth_;
    return make_stmt(std::move(loop), location);
  }
  if (t.is_identifier("if")) {
    advance();
    IfStmt branch;
    expect("(");
    branch.condition = parse_expression();
    expect(")");
    branch.then_body = parse_body();
    if (peek().is_identifier("else")) {
      advance();
      branch.else_body = parse_body();
    }
    return make_stmt(std::move(branch), location);
  }
  if (t.is_identifier("continue")) {
    if (loop_depth_ == 0) fail("'continue' outside of a for loop");
    advance();
    expect(";");
    return make_stmt(ContinueStmt{}, location);
  }
  if (t.is_identifier("delete")) {
    advance();
    DeleteStmt del{parse_expression()};
    expect(";");
    return make_stmt(std::move(del), location);
  }
  if (t.is_identifier("return")) {
    advance();
    ReturnStmt ret;
    if (!peek().is(";")) ret.value = parse_expression();
    expect(";");
    return make_stmt(std::move(ret), location);
  }
  if (at_operation()) fail("operations may only be declared at the top level");

  ExprPtr expr = parse_expression();
  if (accept("=")) {
    bool assignable = std::holds_alternative<VarRefExpr>(expr->node) ||
                      std::holds_alternative<FeatureNavExpr>(expr->node);
    if (!assignable) fail_at(expr->location, "invalid assignment target");
    ExprPtr value = parse_expression();
    AssignStmt assign{std::move(expr), std::move(value)};
    expect(";");
    return make_stmt(std::move(assign), location);
  }
  expect(";");
  return make_stmt(ExprStmt{std::move(expr)}, location);
}

ExprPtr Parser::parse_expression() { return parse_or(); }

ExprPtr Parser::parse_or() {
  ExprPtr lhs = parse_and();
  while (peek().is_identifier("or")) {
    SourceLocation location = advance().location;
    ExprPtr rhs = parse_and();
    lhs = make_expr(BinaryExpr{BinaryOp::or_, std::move(lhs), std::move(rhs)}, location);
  }
  return lhs;
}

ExprPtr Parser::parse_and() {
  ExprPtr lhs = parse_comparison();
  while (peek().is_identifier("and")) {
    SourceLocation location = advance().location;
    ExprPtr rhs = parse_comparison();
    lhs = make_expr(BinaryExpr{BinaryOp::and_, std::move(lhs), std::move(rhs)}, location);
  }
  return lhs;
}

ExprPtr Parser::parse_comparison() {
  ExprPtr lhs = parse_additive();
  for (;;) {
    BinaryOp op;
    if (peek().is("==")) op = BinaryOp::eq;
    else if (peek().is("<>")) op = BinaryOp::ne;
    else if (peek().is("<")) op = BinaryOp::lt;
    else if (peek().is("<=")) op = BinaryOp::le;
    else if (peek().is(">")) op = BinaryOp::gt;
    else if (peek().is(">=")) op = BinaryOp::ge;
    else return lhs;
    SourceLocation location = advance().location;
    ExprPtr rhs = parse_additive();
    lhs = make_expr(BinaryExpr{op, std::move(lhs), std::move(rhs)}, location);
  }
}

ExprPtr Parser::parse_additive() {
  ExprPtr lhs = parse_multiplicative();
  while (peek().is("+") || peek().is("-")) {
    BinaryOp op = peek().is("+") ? BinaryOp::add : BinaryOp::sub;
    SourceLocation location = advance().location;
    ExprPtr rhs = parse_multiplicative();
    lhs = make_expr(BinaryExpr{op, std::move(lhs), std::move(rhs)}, location);
  }
  return lhs;
}

ExprPtr Parser::parse_multiplicative() {
  ExprPtr lhs = parse_unary();
  while (peek().is("*") || peek().is("/")) {
    BinaryOp op = peek().is("*") ? BinaryOp::mul : BinaryOp::div;
    SourceLocation location = advance().location;
    ExprPtr rhs = parse_unary();
    lhs = make_expr(BinaryExpr{op, std::move(lhs), std::move(rhs)}, location);
  }
  return lhs;
}

ExprPtr Parser::parse_unary() {
  if (peek().is_identifier("not")) {
    SourceLocation location = advance().location;
    return make_expr(UnaryExpr{UnaryOp::not_, parse_unary()}, location);
  }
  if (peek().is("-") && peek(1).min_magnitude) {
    SourceLocation location = advance().location;
    return make_expr(LiteralExpr{Value(advance().integer)}, location);
  }
  if (peek().is("-")) {
    SourceLocation location = advance().location;
    return make_expr(UnaryExpr{UnaryOp::negate, parse_unary()}, location);
  }
  return parse_postfix();
}

ExprPtr Parser::parse_postfix() {
  ExprPtr expr = parse_primary();
  while (peek().is(".")) {
    advance();
    SourceLocation location = peek().location;
    if (peek().kind != TokenKind::identifier) fail("expected feature or operation name after '.'");
    std::string name = advance().text;
    if (!peek().is("(")) {
      expr = make_expr(FeatureNavExpr{std::move(expr), std::move(name)}, location);
      continue;
    }
    advance();
    if (is_lambda_operation(name) && peek().kind == TokenKind::identifier && peek(1).is("|")) {
      std::string iterator = expect_identifier("iterator variable").text;
      expect("|");
      ExprPtr body = parse_expression();
      expect(")");
      expr = make_expr(
          LambdaCallExpr{std::move(expr), std::move(name), std::move(iterator), std::move(body)},
          location);
      continue;
    }
    std::vector<ExprPtr> args;
    if (!accept(")")) {
      do {
        args.push_back(parse_expression());
      } while (accept(","));
      expect(")");
    }
    expr = make_expr(MethodCallExpr{std::move(expr), std::move(name), std::move(args)}, location);
  }
  return expr;
}

ExprPtr Parser::parse_primary() {
  const Token& t = peek();
  SourceLocation location = t.location;
  switch (t.kind) {
    case TokenKind::integer:
      if (t.min_magnitude) fail("integer literal out of range: " + t.text);
      advance();
      return make_expr(LiteralExpr{Value(t.integer)}, location);
    case TokenKind::real:
      advance();
      return make_expr(LiteralExpr{Value(t.real)}, location);
    case TokenKind::string:
      advance();
      return make_expr(LiteralExpr{Value(t.text)}, location);
    case TokenKind::end:
      fail("expected an expression but found end of input");
    case TokenKind::punct:
      if (t.is("(")) {
        advance();
        ExprPtr inner = parse_expression();
        expect(")");
        return inner;
      }
      fail("expected an expression but found " + describe(t));
    case TokenKind::identifier:
      break;
  }

  if (t.text == "true" || t.text == "false") {
    advance();
    return make_expr(LiteralExpr{Value(t.text == "true")}, location);
  }
  if (t.text == "new") {
    advance();
    TypeRef type = parse_type_ref();
    if (!type.model && type.arguments.empty() && (type.name == "Sequence" || type.name == "Set")) {
      auto kind = type.name == "Sequence" ? CollectionKind::sequence : CollectionKind::set;
      return make_expr(NewCollectionExpr{kind}, location);
    }
    return make_expr(NewExpr{std::move(type)}, location);
  }
  if ((t.text == "Sequence" || t.text == "Set") && peek(1).is("{")) {
    auto kind = t.text == "Sequence" ? CollectionKind::sequence : CollectionKind::set;
    advance();
    advance();
    CollectionLiteralExpr literal{kind, {}};
    if (!accept("}")) {
      do {
        literal.items.push_back(parse_expression());
      } while (accept(","));
      expect("}");
    }
    return make_expr(std::move(literal), location);
  }
  if (is_keyword(t.text)) fail("expected an expression but found '" + t.text + "'");
  if (peek(1).is("!")) return make_expr(TypeExpr{parse_type_ref()}, location);
  advance();
  return make_expr(VarRefExpr{t.text}, location);
}

void check_operation_signatures(const std::vector<OperationPtr>& operations) {
  std::set<std::tuple<std::string, std::string, std::size_t>> seen;
  std::vector<Diagnostic> problems;
  for (const auto& op : operations) {
    if (!seen.emplace(op->context.to_string(), op->name, op->params.size()).second) {
      problems.push_back(Diagnostic{Severity::error,
                                    "duplicate operation " + op->context.to_string() + "." +
                                        op->name + " with " + std::to_string(op->params.size()) +
                                        " parameter(s)",
                                    op->location});
    }
  }
  if (!problems.empty()) throw DiagnosticError(std::move(problems));
}

Program parse_eol(std::string_view text, const std::string& file) {
  return Parser(text, file).parse_program();
}

}  // namespace epsilite::eol
