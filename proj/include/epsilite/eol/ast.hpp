#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epsilite/diagnostic.hpp"
#include "epsilite/value.hpp"

namespace epsilite::eol {

/// A type name as written in source: `Node`, `Original!Node`, `Collection(Node)`.
struct TypeRef {
  std::optional<std::string> model;
  std::string name;
  std::vector<TypeRef> arguments;
  SourceLocation location;

  std::string to_string() const;
};

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

enum class BinaryOp { eq, ne, lt, le, gt, ge, and_, or_, add, sub, mul, div };
enum class UnaryOp { not_, negate };

std::string_view to_string(BinaryOp op);

struct LiteralExpr { Value value; };
struct VarRefExpr { std::string name; };
/// Explicitly qualified type used as a value, e.g. `Original!Node` in `Original!Node.all`.
struct TypeExpr { TypeRef type; };
struct FeatureNavExpr { ExprPtr receiver; std::string name; };
struct MethodCallExpr { ExprPtr receiver; std::string name; std::vector<ExprPtr> args; };
/// select / selectOne / exists / collect with an iterator variable.
struct LambdaCallExpr { ExprPtr receiver; std::string name; std::string iterator; ExprPtr body; };
struct NewExpr { TypeRef type; };
struct NewCollectionExpr { CollectionKind kind; };
struct CollectionLiteralExpr { CollectionKind kind; std::vector<ExprPtr> items; };
struct BinaryExpr { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };
struct UnaryExpr { UnaryOp op; ExprPtr operand; };

struct Expr {
  using Node = std::variant<LiteralExpr, VarRefExpr, TypeExpr, FeatureNavExpr, MethodCallExpr,
                            LambdaCallExpr, NewExpr, NewCollectionExpr, CollectionLiteralExpr,
                            BinaryExpr, UnaryExpr>;
  Node node;
  SourceLocation location;
};

struct VarDeclStmt { std::string name; std::optional<TypeRef> type; ExprPtr init; };
struct AssignStmt { ExprPtr target; ExprPtr value; };
struct ExprStmt { ExprPtr expr; };
struct ForStmt { std::string variable; ExprPtr iterable; Block body; };
struct ContinueStmt {};
struct IfStmt { ExprPtr condition; Block then_body; Block else_body; };
struct DeleteStmt { ExprPtr target; };
struct ReturnStmt { ExprPtr value; };  // value may be null

struct Stmt {
  using Node = std::variant<VarDeclStmt, AssignStmt, ExprStmt, ForStmt, ContinueStmt, IfStmt,
                            DeleteStmt, ReturnStmt>;
  Node node;
  SourceLocation location;
};

struct Parameter {
  std::string name;
  std::optional<TypeRef> type;
};

struct OperationDef {
  TypeRef context;
  std::string name;
  std::vector<Parameter> params;
  std::optional<TypeRef> return_type;
  bool cached = false;
  Block body;
  SourceLocation location;
};

using OperationPtr = std::shared_ptr<const OperationDef>;

struct Program {
  Block statements;
  std::vector<OperationPtr> operations;
};

}  // namespace epsilite::eol
