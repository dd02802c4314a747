#pragma once

#include "gcyc/errors.hpp"

#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gcyc::expr {

/// Syntax, type, unknown-function or arity error at a 1-based position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

class UnboundVariableError : public EvalError {
 public:
  explicit UnboundVariableError(std::string name)
      : EvalError("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

enum class NodeKind { Number, Variable, Negate, Binary, Compare, Not, And, Or, Call, If };

struct Node {
  NodeKind kind = NodeKind::Number;
  double value = 0.0;
  /// Variable or function name, or the operator spelling.
  std::string name;
  std::vector<std::shared_ptr<const Node>> children;
  bool boolean = false;
};

/// Immutable expression tree; cheap to copy and safe to share across threads.
class Expr {
 public:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  bool is_boolean() const { return root_->boolean; }
  std::set<std::string> free_variables() const;

 private:
  std::shared_ptr<const Node> root_;
};

/// Grammar, loosest to tightest:
///   or -> and -> not -> comparison (< <= > >= =) -> + - -> * / -> unary - -> ^
/// `^` is right-associative, everything else left-associative. Functions:
/// exp abs sqrt log (one argument), min max (two or more), if(cond, a, b).
Expr parse_expr(const std::string& text);

/// Fully parenthesized rendering; parse_expr(to_string(e)) is structurally e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Variable bindings for eval_expr.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<std::string, double>> init) : vars_(init) {}

  Env& set(const std::string& name, double value);
  const double* find(const std::string& name) const;

 private:
  std::vector<std::pair<std::string, double>> vars_;
};

/// Evaluates a numeric expression. Division by zero, log of a nonpositive
/// value, sqrt of a negative value and any non-finite intermediate raise
/// EvalError naming the subexpression.
double eval_expr(const Expr& e, const Env& env);

/// Evaluates a boolean expression (a predicate).
bool eval_predicate(const Expr& e, const Env& env);

/// Expression with variables resolved to positional slots, for repeated
/// evaluation. Throws UnboundVariableError at construction if a variable is
/// not among `slots`.
class Compiled {
 public:
  Compiled(const Expr& e, const std::vector<std::string>& slots);

  double operator()(std::span<const double> values) const;
  bool test(std::span<const double> values) const;
  bool is_boolean() const;
  const Expr& source() const { return source_; }

  struct CNode;

 private:
  Expr source_;
  std::shared_ptr<const CNode> root_;
};

}  // namespace gcyc::expr
