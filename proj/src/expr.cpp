#include "gcyc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace gcyc::expr {

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

using NodePtr = std::shared_ptr<const Node>;

enum class Tok { Number, Ident, Op, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < text_.size() &&
                                                          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        t.kind = Tok::Number;
        t.text = number();
        t.number = std::strtod(t.text.c_str(), nullptr);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          t.text += advance();
      } else if (c == '(') {
        t.kind = Tok::LParen;
        t.text = advance();
      } else if (c == ')') {
        t.kind = Tok::RParen;
        t.text = advance();
      } else if (c == ',') {
        t.kind = Tok::Comma;
        t.text = advance();
      } else if (c == '<' || c == '>' || c == '=') {
        t.kind = Tok::Op;
        t.text = advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          if (t.text != "=") t.text += '=';
        }
      } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
        t.kind = Tok::Op;
        t.text = advance();
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", line_, column_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool digit_at(std::size_t p) const {
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  std::string number() {
    std::string s;
    while (digit_at(pos_)) s += advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      s += advance();
      while (digit_at(pos_)) s += advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (digit_at(look)) {
        while (pos_ < look) s += advance();
        while (digit_at(pos_)) s += advance();
      }
    }
    return s;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct FunctionSpec {
  const char* name;
  int min_args;
  int max_args;  // -1: unbounded
};

constexpr FunctionSpec kFunctions[] = {
    {"exp", 1, 1}, {"abs", 1, 1}, {"sqrt", 1, 1}, {"log", 1, 1},
    {"min", 2, -1}, {"max", 2, -1}, {"if", 3, 3},
};

const FunctionSpec* find_function(const std::string& name) {
  for (const auto& f : kFunctions)
    if (name == f.name) return &f;
  return nullptr;
}

bool is_keyword(const std::string& s) { return s == "and" || s == "or" || s == "not"; }

NodePtr make(NodeKind kind, std::string name, std::vector<NodePtr> children, bool boolean) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->children = std::move(children);
  n->boolean = boolean;
  return n;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  NodePtr parse() {
    NodePtr e = or_expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  bool at_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw SyntaxError(msg, t.line, t.column);
  }

  static void need_bool(const NodePtr& n, const Token& at) {
    if (!n->boolean) fail_at(at, "expected a condition, found a numeric expression");
  }
  static void need_num(const NodePtr& n, const Token& at) {
    if (n->boolean) fail_at(at, "expected a numeric expression, found a condition");
  }

  NodePtr or_expr() {
    const Token start = peek();
    NodePtr left = and_expr();
    while (at_word("or")) {
      const Token op = take();
      need_bool(left, start);
      const Token rs = peek();
      NodePtr right = and_expr();
      need_bool(right, rs);
      left = make(NodeKind::Or, op.text, {left, right}, true);
    }
    return left;
  }

  NodePtr and_expr() {
    const Token start = peek();
    NodePtr left = not_expr();
    while (at_word("and")) {
      const Token op = take();
      need_bool(left, start);
      const Token rs = peek();
      NodePtr right = not_expr();
      need_bool(right, rs);
      left = make(NodeKind::And, op.text, {left, right}, true);
    }
    return left;
  }

  NodePtr not_expr() {
    if (at_word("not")) {
      take();
      const Token at = peek();
      NodePtr inner = cmp();
      need_bool(inner, at);
      return make(NodeKind::Not, "not", {inner}, true);
    }
    return cmp();
  }

  NodePtr cmp() {
    const Token start = peek();
    NodePtr left = sum();
    if (at_op("<") || at_op("<=") || at_op(">") || at_op(">=") || at_op("=")) {
      const Token op = take();
      need_num(left, start);
      const Token rs = peek();
      NodePtr right = sum();
      need_num(right, rs);
      return make(NodeKind::Compare, op.text, {left, right}, true);
    }
    return left;
  }

  NodePtr sum() {
    const Token start = peek();
    NodePtr left = term();
    while (at_op("+") || at_op("-")) {
      const Token op = take();
      need_num(left, start);
      const Token rs = peek();
      NodePtr right = term();
      need_num(right, rs);
      left = make(NodeKind::Binary, op.text, {left, right}, false);
    }
    return left;
  }

  NodePtr term() {
    const Token start = peek();
    NodePtr left = factor();
    while (at_op("*") || at_op("/")) {
      const Token op = take();
      need_num(left, start);
      const Token rs = peek();
      NodePtr right = factor();
      need_num(right, rs);
      left = make(NodeKind::Binary, op.text, {left, right}, false);
    }
    return left;
  }

  NodePtr factor() {
    if (at_op("-")) {
      take();
      const Token at = peek();
      NodePtr inner = power();
      need_num(inner, at);
      return make(NodeKind::Negate, "-", {inner}, false);
    }
    return power();
  }

  NodePtr power() {
    const Token start = peek();
    NodePtr base = atom();
    if (at_op("^")) {
      take();
      need_num(base, start);
      const Token rs = peek();
      NodePtr exponent = factor();
      need_num(exponent, rs);
      return make(NodeKind::Binary, "^", {base, exponent}, false);
    }
    return base;
  }

  NodePtr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Number;
        n->value = t.number;
        return n;
      }
      case Tok::LParen: {
        take();
        NodePtr inner = or_expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return inner;
      }
      case Tok::Ident: {
        if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
        take();
        if (peek().kind == Tok::LParen) return call(t);
        return make(NodeKind::Variable, t.text, {}, false);
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  NodePtr call(const Token& name) {
    const FunctionSpec* spec = find_function(name.text);
    if (!spec) fail_at(name, "unknown function '" + name.text + "'");
    take();  // (
    std::vector<NodePtr> args;
    std::vector<Token> starts;
    if (peek().kind != Tok::RParen) {
      for (;;) {
        starts.push_back(peek());
        args.push_back(or_expr());
        if (peek().kind == Tok::Comma) {
          take();
          continue;
        }
        break;
      }
    }
    if (peek().kind != Tok::RParen) fail("expected ',' or ')'");
    take();
    const int n = static_cast<int>(args.size());
    if (n < spec->min_args || (spec->max_args >= 0 && n > spec->max_args)) {
      std::string expect = spec->max_args == spec->min_args
                               ? std::to_string(spec->min_args)
                               : "at least " + std::to_string(spec->min_args);
      fail_at(name, "function '" + name.text + "' expects " + expect + " argument(s), got " +
                        std::to_string(n));
    }
    if (name.text == "if") {
      need_bool(args[0], starts[0]);
      if (args[1]->boolean != args[2]->boolean)
        fail_at(starts[2], "both branches of if must have the same type");
      const bool b = args[1]->boolean;
      return make(NodeKind::If, "if", std::move(args), b);
    }
    for (std::size_t i = 0; i < args.size(); ++i) need_num(args[i], starts[i]);
    return make(NodeKind::Call, name.text, std::move(args), false);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Variable) out.insert(n.name);
  for (const auto& c : n.children) collect(*c, out);
}

std::string render(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      return buf;
    }
    case NodeKind::Variable: return n.name;
    case NodeKind::Negate: return "(-" + render(*n.children[0]) + ")";
    case NodeKind::Not: return "(not " + render(*n.children[0]) + ")";
    case NodeKind::Binary:
    case NodeKind::Compare:
    case NodeKind::And:
    case NodeKind::Or:
      return "(" + render(*n.children[0]) + " " + n.name + " " + render(*n.children[1]) + ")";
    case NodeKind::Call:
    case NodeKind::If: {
      std::string s = n.name + "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ", ";
        s += render(*n.children[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

bool same(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.boolean != b.boolean || a.children.size() != b.children.size())
    return false;
  if (a.kind == NodeKind::Number) {
    if (!(a.value == b.value || (std::isnan(a.value) && std::isnan(b.value)))) return false;
  } else if (a.name != b.name) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same(*a.children[i], *b.children[i])) return false;
  return true;
}

}  // namespace

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> out;
  collect(*root_, out);
  return out;
}

Expr parse_expr(const std::string& text) {
  auto tokens = Lexer(text).run();
  if (tokens.size() == 1) throw SyntaxError("empty expression", tokens[0].line, tokens[0].column);
  return Expr(Parser(std::move(tokens)).parse());
}

std::string to_string(const Expr& e) { return render(e.root()); }

bool structurally_equal(const Expr& a, const Expr& b) { return same(a.root(), b.root()); }

Env& Env::set(const std::string& name, double value) {
  for (auto& [k, v] : vars_) {
    if (k == name) {
      v = value;
      return *this;
    }
  }
  vars_.emplace_back(name, value);
  return *this;
}

const double* Env::find(const std::string& name) const {
  for (const auto& [k, v] : vars_)
    if (k == name) return &v;
  return nullptr;
}

// --- compiled evaluation ---------------------------------------------------

enum class Code {
  Number, Slot, Negate, Add, Sub, Mul, Div, Pow,
  Lt, Le, Gt, Ge, Eq, Not, And, Or,
  Exp, Abs, Sqrt, Log, Min, Max, If,
};

struct Compiled::CNode {
  Code code = Code::Number;
  double value = 0.0;
  std::size_t slot = 0;
  const Node* source = nullptr;
  std::vector<CNode> children;
};

namespace {

Code code_for(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number: return Code::Number;
    case NodeKind::Variable: return Code::Slot;
    case NodeKind::Negate: return Code::Negate;
    case NodeKind::Not: return Code::Not;
    case NodeKind::And: return Code::And;
    case NodeKind::Or: return Code::Or;
    case NodeKind::If: return Code::If;
    case NodeKind::Binary:
      if (n.name == "+") return Code::Add;
      if (n.name == "-") return Code::Sub;
      if (n.name == "*") return Code::Mul;
      if (n.name == "/") return Code::Div;
      return Code::Pow;
    case NodeKind::Compare:
      if (n.name == "<") return Code::Lt;
      if (n.name == "<=") return Code::Le;
      if (n.name == ">") return Code::Gt;
      if (n.name == ">=") return Code::Ge;
      return Code::Eq;
    case NodeKind::Call:
      if (n.name == "exp") return Code::Exp;
      if (n.name == "abs") return Code::Abs;
      if (n.name == "sqrt") return Code::Sqrt;
      if (n.name == "log") return Code::Log;
      if (n.name == "min") return Code::Min;
      return Code::Max;
  }
  return Code::Number;
}

Compiled::CNode compile(const Node& n, const std::vector<std::string>& slots) {
  Compiled::CNode c;
  c.code = code_for(n);
  c.value = n.value;
  c.source = &n;
  if (n.kind == NodeKind::Variable) {
    auto it = std::find(slots.begin(), slots.end(), n.name);
    if (it == slots.end()) throw UnboundVariableError(n.name);
    c.slot = static_cast<std::size_t>(it - slots.begin());
  }
  for (const auto& child : n.children) c.children.push_back(compile(*child, slots));
  return c;
}

[[noreturn]] void domain_fail(const Compiled::CNode& c, const std::string& why) {
  throw EvalError(why + " in '" + render(*c.source) + "'");
}

double num(const Compiled::CNode& c, std::span<const double> v);

bool truth(const Compiled::CNode& c, std::span<const double> v) {
  switch (c.code) {
    case Code::Lt: return num(c.children[0], v) < num(c.children[1], v);
    case Code::Le: return num(c.children[0], v) <= num(c.children[1], v);
    case Code::Gt: return num(c.children[0], v) > num(c.children[1], v);
    case Code::Ge: return num(c.children[0], v) >= num(c.children[1], v);
    case Code::Eq: return num(c.children[0], v) == num(c.children[1], v);
    case Code::Not: return !truth(c.children[0], v);
    case Code::And: return truth(c.children[0], v) && truth(c.children[1], v);
    case Code::Or: return truth(c.children[0], v) || truth(c.children[1], v);
    case Code::If: return truth(c.children[0], v) ? truth(c.children[1], v) : truth(c.children[2], v);
    default: domain_fail(c, "numeric value used as a condition");
  }
}

double num(const Compiled::CNode& c, std::span<const double> v) {
  double r = 0.0;
  switch (c.code) {
    case Code::Number: return c.value;
    case Code::Slot: r = v[c.slot]; break;
    case Code::Negate: r = -num(c.children[0], v); break;
    case Code::Add: r = num(c.children[0], v) + num(c.children[1], v); break;
    case Code::Sub: r = num(c.children[0], v) - num(c.children[1], v); break;
    case Code::Mul: r = num(c.children[0], v) * num(c.children[1], v); break;
    case Code::Div: {
      const double a = num(c.children[0], v);
      const double b = num(c.children[1], v);
      if (b == 0.0) domain_fail(c, "division by zero");
      r = a / b;
      break;
    }
    case Code::Pow: r = std::pow(num(c.children[0], v), num(c.children[1], v)); break;
    case Code::Exp: r = std::exp(num(c.children[0], v)); break;
    case Code::Abs: r = std::abs(num(c.children[0], v)); break;
    case Code::Sqrt: {
      const double a = num(c.children[0], v);
      if (a < 0.0) domain_fail(c, "square root of a negative value");
      r = std::sqrt(a);
      break;
    }
    case Code::Log: {
      const double a = num(c.children[0], v);
      if (!(a > 0.0)) domain_fail(c, "logarithm of a nonpositive value");
      r = std::log(a);
      break;
    }
    case Code::Min:
    case Code::Max: {
      r = num(c.children[0], v);
      for (std::size_t i = 1; i < c.children.size(); ++i) {
        const double a = num(c.children[i], v);
        r = c.code == Code::Min ? std::min(r, a) : std::max(r, a);
      }
      break;
    }
    case Code::If:
      r = truth(c.children[0], v) ? num(c.children[1], v) : num(c.children[2], v);
      break;
    default: domain_fail(c, "condition used as a number");
  }
  if (!std::isfinite(r)) domain_fail(c, "non-finite result");
  return r;
}

}  // namespace

Compiled::Compiled(const Expr& e, const std::vector<std::string>& slots)
    : source_(e), root_(std::make_shared<const CNode>(compile(e.root(), slots))) {}

double Compiled::operator()(std::span<const double> values) const {
  if (source_.is_boolean()) throw EvalError("expression is a condition, not a number");
  return num(*root_, values);
}

bool Compiled::test(std::span<const double> values) const {
  if (!source_.is_boolean()) throw EvalError("expression is a number, not a condition");
  return truth(*root_, values);
}

bool Compiled::is_boolean() const { return source_.is_boolean(); }

namespace {

std::pair<std::vector<std::string>, std::vector<double>> bind(const Expr& e, const Env& env) {
  std::vector<std::string> names;
  std::vector<double> values;
  for (const auto& name : e.free_variables()) {
    const double* v = env.find(name);
    if (!v) throw UnboundVariableError(name);
    names.push_back(name);
    values.push_back(*v);
  }
  return {std::move(names), std::move(values)};
}

}  // namespace

double eval_expr(const Expr& e, const Env& env) {
  auto [names, values] = bind(e, env);
  return Compiled(e, names)(values);
}

bool eval_predicate(const Expr& e, const Env& env) {
  auto [names, values] = bind(e, env);
  return Compiled(e, names).test(values);
}

}  // namespace gcyc::expr
