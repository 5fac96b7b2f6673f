#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epsilite/diagnostic.hpp"
#include "epsilite/eol/ast.hpp"
#include "epsilite/model.hpp"

namespace epsilite::eol {

struct ResolvedType {
  Model* model = nullptr;
  const ClassDef* type = nullptr;
};

/// Tree-walking evaluator state: bound models, variable scopes, user
/// operations and their memo table, and the output buffers.
class ExecutionContext {
 public:
  explicit ExecutionContext(Repository& repository);

  ExecutionContext(const ExecutionContext&) = delete;
  ExecutionContext& operator=(const ExecutionContext&) = delete;

  Repository& repository() noexcept { return repository_; }

  void add_operations(const std::vector<OperationPtr>& operations);

  /// Text written by println/print.
  const std::string& output() const noexcept { return output_; }

  /// Makes the implicit `out` object available; out.print/out.println
  /// append to `buffer`.
  void enable_template_output(std::string* buffer) noexcept { template_output_ = buffer; }

  /// Unqualified type names resolve in this model first when it defines them.
  void set_default_model(std::string name) { default_model_ = std::move(name); }

  /// Installs the `equivalent()` built-in.
  void set_equivalent(std::function<Value(const Value&)> equivalent) {
    equivalent_ = std::move(equivalent);
  }

  /// RAII variable frame.
  class Scope {
   public:
    explicit Scope(ExecutionContext& ctx, bool barrier = false);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    ExecutionContext& ctx_;
  };

  /// Binds a variable in the innermost frame.
  void define(const std::string& name, Value value);
  /// Visible variable or nullptr. Operation bodies see their own frames and
  /// the global frame only.
  Value* lookup(std::string_view name);

  /// Runs statements in the current frame; a `return` ends the block.
  void execute(const Block& block);
  Value evaluate(const Expr& expr);

  Value call_operation(const Value& receiver, std::string_view name, std::vector<Value> args,
                       const SourceLocation& location);

  /// `M!T` resolves T in model M. Plain `T` uses the default model when it
  /// defines T, otherwise the unique bound model defining it.
  ResolvedType resolve_type(const TypeRef& type);
  ResolvedType resolve_type(const std::optional<std::string>& model, std::string_view name,
                            const SourceLocation& location);

  /// Deletes an element, each element of a collection, or nothing for Undefined.
  void delete_value(const Value& value, const SourceLocation& location);

  /// How many times the bodies of operations called `name` actually ran
  /// (cache hits are not counted).
  std::size_t body_executions(std::string_view name) const;

 private:
  enum class Flow { normal, continue_loop, return_value };

  struct Frame {
    std::unordered_map<std::string, Value> variables;
    bool barrier = false;
  };

  struct MemoEntry {
    std::vector<Value> args;
    Value result;
  };

  Flow execute_block(const Block& block);
  Flow execute_statement(const Stmt& stmt);
  Value evaluate_node(const Expr& expr);
  Value evaluate_binary(const BinaryExpr& binary, const SourceLocation& location);
  Value evaluate_unary(const UnaryExpr& unary, const SourceLocation& location);
  Value evaluate_feature(const FeatureNavExpr& nav, const SourceLocation& location);
  Value evaluate_method(const MethodCallExpr& call, const SourceLocation& location);
  Value evaluate_lambda(const LambdaCallExpr& call, const SourceLocation& location);
  void assign(const AssignStmt& assign, const SourceLocation& location);

  std::optional<ResolvedType> type_receiver(const Expr& receiver);
  const OperationDef* find_operation(const Value& receiver, std::string_view name,
                                     std::size_t arity);
  std::optional<int> context_distance(const TypeRef& context, const Value& receiver);
  Value invoke(const OperationDef& op, const Value& receiver, std::vector<Value> args,
               const SourceLocation& location);
  Value call_builtin(const Value& receiver, std::string_view name, std::vector<Value>& args,
                     const SourceLocation& location);
  Value mutate_collection(const Value& receiver, std::string_view name,
                          const std::vector<Value>& args, const SourceLocation& location);
  Model& model_for(const ElementRef& ref, const SourceLocation& location);

  Repository& repository_;
  std::vector<OperationPtr> operations_;
  std::vector<Frame> frames_;
  std::map<std::pair<const OperationDef*, std::string>, std::vector<MemoEntry>> memo_;
  std::unordered_map<const OperationDef*, std::size_t> executions_;
  std::string output_;
  std::string* template_output_ = nullptr;
  std::optional<std::string> default_model_;
  std::function<Value(const Value&)> equivalent_;
  Value return_value_;
  int call_depth_ = 0;
};

struct ExecutionResult {
  std::string output;
  std::optional<RuntimeError> error;
};

/// Executes a program against the bound models. On a runtime error execution
/// stops; output produced so far is kept.
ExecutionResult run_program(const Program& program, Repository& repository);

}  // namespace epsilite::eol
