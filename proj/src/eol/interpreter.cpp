#include "epsilite/eol/interpreter.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <set>

namespace epsilite::eol {

namespace {

constexpr int kMaxCallDepth = 512;

[[noreturn]] void fail(const SourceLocation& location, std::string message) {
  throw RuntimeError(std::move(message), location);
}

std::string describe(const Value& v) {
  if (v.is_element() || v.is_undefined()) return display(v);
  return type_name(v);
}

bool require_bool(const Value& v, const SourceLocation& location, std::string_view what) {
  if (!v.is_bool()) fail(location, std::string(what) + " must be Boolean, got " + describe(v));
  return v.as_bool();
}

/// Identity of a receiver for the operation cache.
std::string memo_identity(const Value& v) {
  if (v.is_element()) return "E:" + v.as_element().model + "/" + v.as_element().id;
  if (v.is_collection()) {
    return "C:" + std::to_string(reinterpret_cast<std::uintptr_t>(v.as_collection().get()));
  }
  return type_name(v) + ":" + display(v);
}

std::optional<CollectionKind> collection_type(const TypeRef& type) {
  if (type.model) return std::nullopt;
  if (type.name == "Set" || type.name == "OrderedSet") return CollectionKind::set;
  if (type.name == "Sequence" || type.name == "Bag" || type.name == "List" ||
      type.name == "Collection") {
    return CollectionKind::sequence;
  }
  return std::nullopt;
}

template <typename Op>
std::int64_t checked(Op op, std::int64_t x, std::int64_t y, const SourceLocation& location) {
  std::int64_t r = 0;
  if (op(x, y, &r)) fail(location, "integer overflow");
  return r;
}

}  // namespace

ExecutionContext::ExecutionContext(Repository& repository) : repository_(repository) {
  frames_.push_back(Frame{{}, true});
}

ExecutionContext::Scope::Scope(ExecutionContext& ctx, bool barrier) : ctx_(ctx) {
  ctx_.frames_.push_back(Frame{{}, barrier});
}

ExecutionContext::Scope::~Scope() { ctx_.frames_.pop_back(); }

void ExecutionContext::add_operations(const std::vector<OperationPtr>& operations) {
  operations_.insert(operations_.end(), operations.begin(), operations.end());
}

void ExecutionContext::define(const std::string& name, Value value) {
  frames_.back().variables[name] = std::move(value);
}

Value* ExecutionContext::lookup(std::string_view name) {
  std::string key(name);
  for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
    auto found = it->variables.find(key);
    if (found != it->variables.end()) return &found->second;
    if (it->barrier) break;
  }
  auto found = frames_.front().variables.find(key);
  return found == frames_.front().variables.end() ? nullptr : &found->second;
}

std::size_t ExecutionContext::body_executions(std::string_view name) const {
  std::size_t total = 0;
  for (const auto& [op, count] : executions_) {
    if (op->name == name) total += count;
  }
  return total;
}

void ExecutionContext::execute(const Block& block) { execute_block(block); }

ExecutionContext::Flow ExecutionContext::execute_block(const Block& block) {
  for (const auto& stmt : block) {
    Flow flow = execute_statement(*stmt);
    if (flow != Flow::normal) return flow;
  }
  return Flow::normal;
}

ExecutionContext::Flow ExecutionContext::execute_statement(const Stmt& stmt) {
  const SourceLocation& location = stmt.location;
  try {
    if (auto* decl = std::get_if<VarDeclStmt>(&stmt.node)) {
      if (frames_.back().variables.count(decl->name)) {
        fail(location, "variable " + decl->name + " is already defined");
      }
      Value value;
      if (decl->init) {
        value = evaluate(*decl->init);
      } else if (decl->type) {
        if (auto kind = collection_type(*decl->type)) value = Value::collection(*kind);
      }
      define(decl->name, std::move(value));
      return Flow::normal;
    }
    if (auto* a = std::get_if<AssignStmt>(&stmt.node)) {
      assign(*a, location);
      return Flow::normal;
    }
    if (auto* e = std::get_if<ExprStmt>(&stmt.node)) {
      evaluate(*e->expr);
      return Flow::normal;
    }
    if (auto* loop = std::get_if<ForStmt>(&stmt.node)) {
      Value iterable = evaluate(*loop->iterable);
      if (!iterable.is_collection()) {
        fail(loop->iterable->location, "cannot iterate over " + describe(iterable));
      }
      std::vector<Value> items = iterable.as_collection()->items;
      for (auto& item : items) {
        Scope scope(*this);
        define(loop->variable, std::move(item));
        Flow flow = execute_block(loop->body);
        if (flow == Flow::return_value) return flow;
      }
      return Flow::normal;
    }
    if (std::holds_alternative<ContinueStmt>(stmt.node)) return Flow::continue_loop;
    if (auto* branch = std::get_if<IfStmt>(&stmt.node)) {
      bool taken = require_bool(evaluate(*branch->condition), branch->condition->location,
                                "if condition");
      Scope scope(*this);
      return execute_block(taken ? branch->then_body : branch->else_body);
    }
    if (auto* del = std::get_if<DeleteStmt>(&stmt.node)) {
      delete_value(evaluate(*del->target), location);
      return Flow::normal;
    }
    if (auto* ret = std::get_if<ReturnStmt>(&stmt.node)) {
      return_value_ = ret->value ? evaluate(*ret->value) : Value();
      return Flow::return_value;
    }
  } catch (const AccessViolation& e) {
    throw RuntimeError(e.what(), location, true);
  } catch (const ModelError& e) {
    fail(location, e.what());
  }
  return Flow::normal;
}

void ExecutionContext::assign(const AssignStmt& a, const SourceLocation& location) {
  if (auto* var = std::get_if<VarRefExpr>(&a.target->node)) {
    Value value = evaluate(*a.value);
    Value* slot = lookup(var->name);
    if (!slot) fail(a.target->location, "undefined variable " + var->name);
    *slot = std::move(value);
    return;
  }
  const auto& nav = std::get<FeatureNavExpr>(a.target->node);
  Value receiver = evaluate(*nav.receiver);
  Value value = evaluate(*a.value);
  if (!receiver.is_element()) {
    fail(a.target->location,
         "cannot assign feature " + nav.name + " of " + describe(receiver));
  }
  const ElementRef& ref = receiver.as_element();
  try {
    model_for(ref, location).set_feature(ref.id, nav.name, value);
  } catch (const AccessViolation& e) {
    throw RuntimeError(e.what(), a.target->location, true);
  } catch (const ModelError& e) {
    fail(a.target->location, e.what());
  }
}

void ExecutionContext::delete_value(const Value& value, const SourceLocation& location) {
  if (value.is_undefined()) return;
  if (value.is_element()) {
    const ElementRef& ref = value.as_element();
    model_for(ref, location).delete_element(ref.id);
    return;
  }
  if (value.is_collection()) {
    std::vector<Value> items = value.as_collection()->items;
    for (const auto& item : items) delete_value(item, location);
    return;
  }
  fail(location, "cannot delete " + describe(value));
}

Model& ExecutionContext::model_for(const ElementRef& ref, const SourceLocation& location) {
  Model* model = repository_.find(ref.model);
  if (!model) fail(location, "unknown model " + ref.model);
  return *model;
}

Value ExecutionContext::evaluate(const Expr& expr) {
  try {
    return evaluate_node(expr);
  } catch (const AccessViolation& e) {
    throw RuntimeError(e.what(), expr.location, true);
  } catch (const ModelError& e) {
    fail(expr.location, e.what());
  }
}

Value ExecutionContext::evaluate_node(const Expr& expr) {
  const SourceLocation& location = expr.location;
  return std::visit(
      [&](const auto& node) -> Value {
        using Node = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<Node, LiteralExpr>) {
          return node.value;
        } else if constexpr (std::is_same_v<Node, VarRefExpr>) {
          if (Value* v = lookup(node.name)) return *v;
          for (const auto& model : repository_.models()) {
            if (model->metamodel().find_class(node.name)) {
              fail(location, "type " + node.name + " cannot be used as a value");
            }
          }
          fail(location, "undefined variable " + node.name);
        } else if constexpr (std::is_same_v<Node, TypeExpr>) {
          fail(location, "type " + node.type.to_string() + " cannot be used as a value");
        } else if constexpr (std::is_same_v<Node, FeatureNavExpr>) {
          return evaluate_feature(node, location);
        } else if constexpr (std::is_same_v<Node, MethodCallExpr>) {
          return evaluate_method(node, location);
        } else if constexpr (std::is_same_v<Node, LambdaCallExpr>) {
          return evaluate_lambda(node, location);
        } else if constexpr (std::is_same_v<Node, NewExpr>) {
          if (auto kind = collection_type(node.type)) return Value::collection(*kind);
          ResolvedType resolved = resolve_type(node.type);
          return resolved.model->instantiate(resolved.type->name());
        } else if constexpr (std::is_same_v<Node, NewCollectionExpr>) {
          return Value::collection(node.kind);
        } else if constexpr (std::is_same_v<Node, CollectionLiteralExpr>) {
          std::vector<Value> items;
          for (const auto& item : node.items) items.push_back(evaluate(*item));
          return Value::collection(node.kind, std::move(items));
        } else if constexpr (std::is_same_v<Node, BinaryExpr>) {
          return evaluate_binary(node, location);
        } else {
          return evaluate_unary(node, location);
        }
      },
      expr.node);
}

Value ExecutionContext::evaluate_binary(const BinaryExpr& b, const SourceLocation& location) {
  if (b.op == BinaryOp::and_ || b.op == BinaryOp::or_) {
    bool lhs = require_bool(evaluate(*b.lhs), b.lhs->location, "operand of " + std::string(to_string(b.op)));
    if (b.op == BinaryOp::and_ && !lhs) return false;
    if (b.op == BinaryOp::or_ && lhs) return true;
    return require_bool(evaluate(*b.rhs), b.rhs->location, "operand of " + std::string(to_string(b.op)));
  }

  Value lhs = evaluate(*b.lhs);
  Value rhs = evaluate(*b.rhs);
  auto not_applicable = [&]() {
    return RuntimeError("operator " + std::string(to_string(b.op)) + " not applicable to " +
                            type_name(lhs) + " and " + type_name(rhs),
                        location);
  };

  switch (b.op) {
    case BinaryOp::eq: return value_equals(lhs, rhs);
    case BinaryOp::ne: return !value_equals(lhs, rhs);
    case BinaryOp::lt:
    case BinaryOp::le:
    case BinaryOp::gt:
    case BinaryOp::ge: {
      int order;
      if (lhs.is_number() && rhs.is_number()) {
        if (lhs.is_integer() && rhs.is_integer()) {
          order = lhs.as_integer() < rhs.as_integer() ? -1 : lhs.as_integer() > rhs.as_integer();
        } else {
          order = lhs.as_number() < rhs.as_number() ? -1 : lhs.as_number() > rhs.as_number();
        }
      } else if (lhs.is_string() && rhs.is_string()) {
        int c = lhs.as_string().compare(rhs.as_string());
        order = c < 0 ? -1 : c > 0;
      } else {
        throw not_applicable();
      }
      switch (b.op) {
        case BinaryOp::lt: return order < 0;
        case BinaryOp::le: return order <= 0;
        case BinaryOp::gt: return order > 0;
        default: return order >= 0;
      }
    }
    case BinaryOp::add:
      if (lhs.is_string() || rhs.is_string()) return display(lhs) + display(rhs);
      [[fallthrough]];
    case BinaryOp::sub:
    case BinaryOp::mul:
    case BinaryOp::div: {
      if (!lhs.is_number() || !rhs.is_number()) throw not_applicable();
      if (lhs.is_integer() && rhs.is_integer()) {
        std::int64_t x = lhs.as_integer();
        std::int64_t y = rhs.as_integer();
        switch (b.op) {
          case BinaryOp::add:
            return checked([](auto a, auto c, auto* r) { return __builtin_add_overflow(a, c, r); }, x, y, location);
          case BinaryOp::sub:
            return checked([](auto a, auto c, auto* r) { return __builtin_sub_overflow(a, c, r); }, x, y, location);
          case BinaryOp::mul:
            return checked([](auto a, auto c, auto* r) { return __builtin_mul_overflow(a, c, r); }, x, y, location);
          default:
            if (y == 0) fail(location, "division by zero");
            if (x == INT64_MIN && y == -1) fail(location, "integer overflow");
            return x / y;
        }
      }
      double x = lhs.as_number();
      double y = rhs.as_number();
      switch (b.op) {
        case BinaryOp::add: return x + y;
        case BinaryOp::sub: return x - y;
        case BinaryOp::mul: return x * y;
        default: return x / y;
      }
    }
    default:
      throw not_applicable();
  }
}

Value ExecutionContext::evaluate_unary(const UnaryExpr& u, const SourceLocation& location) {
  Value operand = evaluate(*u.operand);
  if (u.op == UnaryOp::not_) return !require_bool(operand, location, "operand of not");
  if (operand.is_integer()) {
    if (operand.as_integer() == INT64_MIN) fail(location, "integer overflow");
    return -operand.as_integer();
  }
  if (operand.is_real()) return -operand.as_real();
  fail(location, "operator - not applicable to " + type_name(operand));
}

std::optional<ResolvedType> ExecutionContext::type_receiver(const Expr& receiver) {
  if (auto* t = std::get_if<TypeExpr>(&receiver.node)) return resolve_type(t->type);
  auto* var = std::get_if<VarRefExpr>(&receiver.node);
  if (!var || lookup(var->name)) return std::nullopt;
  if (var->name == "out" && template_output_) return std::nullopt;
  bool known = default_model_.has_value() && repository_.find(*default_model_) &&
               repository_.find(*default_model_)->metamodel().find_class(var->name);
  for (const auto& m : repository_.models()) known = known || m->metamodel().find_class(var->name);
  if (!known) return std::nullopt;
  return resolve_type(std::nullopt, var->name, receiver.location);
}

Value ExecutionContext::evaluate_feature(const FeatureNavExpr& nav, const SourceLocation& location) {
  if (auto type = type_receiver(*nav.receiver)) {
    if (nav.name == "all" || nav.name == "allInstances") {
      std::vector<Value> items;
      for (auto& r : type->model->all_instances(*type->type)) items.emplace_back(std::move(r));
      return Value::sequence(std::move(items));
    }
    fail(location, "unknown property " + nav.name + " of type " + type->type->name());
  }

  Value receiver = evaluate(*nav.receiver);
  if (receiver.is_element()) {
    const ElementRef& ref = receiver.as_element();
    Value value = model_for(ref, location).get_feature(ref.id, nav.name);
    if (value.is_collection()) value.as_collection()->origin = SlotOrigin{ref.model, ref.id, nav.name};
    return value;
  }
  if (receiver.is_collection()) {
    std::vector<Value> no_args;
    static const std::set<std::string_view> properties = {"size", "first", "second", "last",
                                                          "isEmpty", "notEmpty"};
    if (properties.count(nav.name)) return call_builtin(receiver, nav.name, no_args, location);
  }
  if (receiver.is_undefined()) {
    fail(location, "cannot navigate feature " + nav.name + " of undefined");
  }
  fail(location, "unknown property " + nav.name + " on " + describe(receiver));
}

Value ExecutionContext::evaluate_method(const MethodCallExpr& call, const SourceLocation& location) {
  if (auto* var = std::get_if<VarRefExpr>(&call.receiver->node);
      var && var->name == "out" && template_output_ && !lookup("out")) {
    if (call.name != "print" && call.name != "println") {
      fail(location, "unknown operation out." + call.name);
    }
    if (call.args.size() > 1) fail(location, "out." + call.name + " takes at most one argument");
    if (!call.args.empty()) *template_output_ += display(evaluate(*call.args[0]));
    if (call.name == "println") *template_output_ += '\n';
    return Value();
  }

  if (auto type = type_receiver(*call.receiver)) {
    if ((call.name == "all" || call.name == "allInstances") && call.args.empty()) {
      std::vector<Value> items;
      for (auto& r : type->model->all_instances(*type->type)) items.emplace_back(std::move(r));
      return Value::sequence(std::move(items));
    }
    fail(location, "unknown operation " + call.name + " on type " + type->type->name());
  }

  Value receiver = evaluate(*call.receiver);
  std::vector<Value> args;
  args.reserve(call.args.size());
  for (const auto& arg : call.args) args.push_back(evaluate(*arg));
  return call_operation(receiver, call.name, std::move(args), location);
}

Value ExecutionContext::evaluate_lambda(const LambdaCallExpr& call, const SourceLocation& location) {
  Value receiver = evaluate(*call.receiver);
  if (!receiver.is_collection()) {
    fail(location, "cannot call " + call.name + " on " + describe(receiver));
  }
  const CollectionKind kind = receiver.as_collection()->kind;
  const std::vector<Value> items = receiver.as_collection()->items;

  auto apply = [&](const Value& item) {
    Scope scope(*this);
    define(call.iterator, item);
    return evaluate(*call.body);
  };
  auto predicate = [&](const Value& item) {
    return require_bool(apply(item), call.body->location, call.name + " condition");
  };

  if (call.name == "select") {
    std::vector<Value> kept;
    for (const auto& item : items) {
      if (predicate(item)) kept.push_back(item);
    }
    return Value::collection(kind, std::move(kept));
  }
  if (call.name == "selectOne") {
    for (const auto& item : items) {
      if (predicate(item)) return item;
    }
    return Value();
  }
  if (call.name == "exists") {
    for (const auto& item : items) {
      if (predicate(item)) return true;
    }
    return false;
  }
  std::vector<Value> mapped;
  mapped.reserve(items.size());
  for (const auto& item : items) mapped.push_back(apply(item));
  return Value::sequence(std::move(mapped));
}

ResolvedType ExecutionContext::resolve_type(const TypeRef& type) {
  return resolve_type(type.model, type.name, type.location);
}

ResolvedType ExecutionContext::resolve_type(const std::optional<std::string>& model,
                                            std::string_view name,
                                            const SourceLocation& location) {
  if (model) {
    Model* m = repository_.find(*model);
    if (!m) fail(location, "unknown model " + *model);
    const ClassDef* type = m->metamodel().find_class(name);
    if (!type) fail(location, "unknown type " + *model + "!" + std::string(name));
    return {m, type};
  }
  if (default_model_) {
    if (Model* m = repository_.find(*default_model_)) {
      if (const ClassDef* type = m->metamodel().find_class(name)) return {m, type};
    }
  }
  std::vector<ResolvedType> candidates;
  for (const auto& m : repository_.models()) {
    if (const ClassDef* type = m->metamodel().find_class(name)) candidates.push_back({m.get(), type});
  }
  if (candidates.empty()) fail(location, "unknown type " + std::string(name));
  if (candidates.size() > 1) {
    std::string models;
    for (const auto& c : candidates) models += (models.empty() ? "" : ", ") + c.model->name();
    fail(location, "ambiguous type " + std::string(name) + " (defined in models " + models + ")");
  }
  return candidates.front();
}

std::optional<int> ExecutionContext::context_distance(const TypeRef& context, const Value& receiver) {
  constexpr int kAnyDistance = 1000;
  if (!context.model && (context.name == "Any" || context.name == "Object")) return kAnyDistance;
  if (receiver.is_element()) {
    const ElementRef& ref = receiver.as_element();
    if (context.model && *context.model != ref.model) return std::nullopt;
    const Model* model = repository_.find(ref.model);
    if (!model) return std::nullopt;
    const ClassDef* actual = model->metamodel().find_class(ref.type);
    const ClassDef* wanted = model->metamodel().find_class(context.name);
    if (!actual || !wanted) return std::nullopt;
    return actual->distance_to(*wanted);
  }
  if (context.model) return std::nullopt;
  if (context.name == type_name(receiver)) return 0;
  if (receiver.is_collection() && context.name == "Collection") return 1;
  return std::nullopt;
}

const OperationDef* ExecutionContext::find_operation(const Value& receiver, std::string_view name,
                                                     std::size_t arity) {
  const OperationDef* best = nullptr;
  int best_distance = INT_MAX;
  for (const auto& op : operations_) {
    if (op->name != name || op->params.size() != arity) continue;
    auto distance = context_distance(op->context, receiver);
    if (distance && *distance < best_distance) {
      best = op.get();
      best_distance = *distance;
    }
  }
  return best;
}

Value ExecutionContext::call_operation(const Value& receiver, std::string_view name,
                                       std::vector<Value> args, const SourceLocation& location) {
  if (const OperationDef* op = find_operation(receiver, name, args.size())) {
    return invoke(*op, receiver, std::move(args), location);
  }
  return call_builtin(receiver, name, args, location);
}

Value ExecutionContext::invoke(const OperationDef& op, const Value& receiver,
                               std::vector<Value> args, const SourceLocation& location) {
  std::vector<MemoEntry>* memo = nullptr;
  if (op.cached) {
    memo = &memo_[{&op, memo_identity(receiver)}];
    for (const auto& entry : *memo) {
      if (std::equal(entry.args.begin(), entry.args.end(), args.begin(), args.end(), value_equals)) {
        return detach(entry.result);
      }
    }
  }

  if (call_depth_ >= kMaxCallDepth) fail(location, "call stack exhausted in " + op.name);
  ++executions_[&op];
  ++call_depth_;
  Value result;
  {
    Scope scope(*this, true);
    define("self", receiver);
    for (std::size_t i = 0; i < args.size(); ++i) define(op.params[i].name, args[i]);
    try {
      if (execute_block(op.body) == Flow::return_value) result = std::move(return_value_);
    } catch (...) {
      --call_depth_;
      throw;
    }
  }
  --call_depth_;
  return_value_ = Value();

  if (memo) memo->push_back(MemoEntry{std::move(args), detach(result)});
  return result;
}

Value ExecutionContext::mutate_collection(const Value& receiver, std::string_view name,
                                          const std::vector<Value>& args,
                                          const SourceLocation& location) {
  Collection& target = *receiver.as_collection();
  Collection updated{target.kind, target.items, std::nullopt};
  if (name == "add") {
    updated.add(args[0]);
  } else if (name == "addAll") {
    if (!args[0].is_collection()) fail(location, "addAll expects a collection, got " + describe(args[0]));
    for (const auto& item : std::vector<Value>(args[0].as_collection()->items)) updated.add(item);
  } else {
    auto it = std::find_if(updated.items.begin(), updated.items.end(),
                           [&](const Value& v) { return value_equals(v, args[0]); });
    if (it != updated.items.end()) updated.items.erase(it);
  }

  if (target.origin) {
    const SlotOrigin& origin = *target.origin;
    Model* model = repository_.find(origin.model);
    if (!model) fail(location, "unknown model " + origin.model);
    model->set_feature(origin.element, origin.feature,
                       Value(std::make_shared<Collection>(updated)));
    updated.items = model->get_feature(origin.element, origin.feature).as_collection()->items;
  }
  target.items = std::move(updated.items);
  return receiver;
}

Value ExecutionContext::call_builtin(const Value& receiver, std::string_view name,
                                     std::vector<Value>& args, const SourceLocation& location) {
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      fail(location, std::string(name) + " expects " + std::to_string(n) + " argument(s), got " +
                         std::to_string(args.size()));
    }
  };

  if (name == "isUndefined" || name == "isDefined") {
    arity(0);
    return name == "isUndefined" ? receiver.is_undefined() : !receiver.is_undefined();
  }
  if (name == "println" || name == "print") {
    if (args.size() > 1) fail(location, std::string(name) + " takes at most one argument");
    if (!args.empty()) output_ += display(args[0]);
    output_ += display(receiver);
    if (name == "println") output_ += '\n';
    return receiver;
  }
  if (name == "equivalent" && equivalent_) {
    arity(0);
    return equivalent_(receiver);
  }

  if (receiver.is_collection()) {
    const auto& items = receiver.as_collection()->items;
    auto nth = [&](std::size_t i) { return i < items.size() ? items[i] : Value(); };
    if (name == "size") return arity(0), Value(static_cast<std::int64_t>(items.size()));
    if (name == "first") return arity(0), nth(0);
    if (name == "second") return arity(0), nth(1);
    if (name == "last") return arity(0), items.empty() ? Value() : items.back();
    if (name == "isEmpty") return arity(0), Value(items.empty());
    if (name == "notEmpty") return arity(0), Value(!items.empty());
    if (name == "contains" || name == "includes") {
      arity(1);
      return receiver.as_collection()->contains(args[0]);
    }
    if (name == "add" || name == "addAll" || name == "remove") {
      arity(1);
      return mutate_collection(receiver, name, args, location);
    }
  }

  if (receiver.is_undefined()) fail(location, "cannot call " + std::string(name) + " on undefined");
  fail(location, "operation not found: " + std::string(name) + " on " + type_name(receiver));
}

ExecutionResult run_program(const Program& program, Repository& repository) {
  ExecutionContext ctx(repository);
  ctx.add_operations(program.operations);
  ExecutionResult result;
  try {
    ctx.execute(program.statements);
  } catch (const RuntimeError& e) {
    result.error = e;
  }
  result.output = ctx.output();
  return result;
}

}  // namespace epsilite::eol
