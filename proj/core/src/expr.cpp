#include "plg/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace plg {

struct Expression::Node {
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func };
  enum class Fn { Exp, Log, Sinh, Cosh, Sqrt, Sin, Cos };

  Kind kind = Kind::Const;
  double value = 0.0;
  int var = -1;
  Fn fn = Fn::Exp;
  std::string name;  // variable name, for printing
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;
using Fn = Node::Fn;

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = v;
  return n;
}

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::Const && n->value == v; }

NodePtr make_unary(Kind k, NodePtr a) {
  if (k == Kind::Neg) {
    if (a->kind == Kind::Const) return make_const(-a->value);
    if (a->kind == Kind::Neg) return a->lhs;
  }
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
  // Light constant folding keeps derivative trees small.
  if (a->kind == Kind::Const && b->kind == Kind::Const) {
    switch (k) {
      case Kind::Add: return make_const(a->value + b->value);
      case Kind::Sub: return make_const(a->value - b->value);
      case Kind::Mul: return make_const(a->value * b->value);
      case Kind::Div: return make_const(a->value / b->value);
      case Kind::Pow: return make_const(std::pow(a->value, b->value));
      default: break;
    }
  }
  switch (k) {
    case Kind::Add:
      if (is_const(a, 0)) return b;
      if (is_const(b, 0)) return a;
      break;
    case Kind::Sub:
      if (is_const(b, 0)) return a;
      if (is_const(a, 0)) return make_unary(Kind::Neg, b);
      break;
    case Kind::Mul:
      if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
      if (is_const(a, 1)) return b;
      if (is_const(b, 1)) return a;
      break;
    case Kind::Div:
      if (is_const(a, 0)) return make_const(0);
      if (is_const(b, 1)) return a;
      break;
    case Kind::Pow:
      if (is_const(b, 1)) return a;
      if (is_const(b, 0)) return make_const(1);
      break;
    default: break;
  }
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_func(Fn fn, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Func;
  n->fn = fn;
  n->lhs = std::move(a);
  return n;
}

double eval(const Node& n, const Vector& x) {
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Var: return x[n.var];
    case Kind::Neg: return -eval(*n.lhs, x);
    case Kind::Add: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Kind::Sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Kind::Mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Kind::Div: return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Kind::Pow: {
      const double b = eval(*n.lhs, x);
      if (n.rhs->kind == Kind::Const) {
        const double e = n.rhs->value;
        if (e == 2.0) return b * b;
        if (e == 3.0) return b * b * b;
      }
      return std::pow(b, eval(*n.rhs, x));
    }
    case Kind::Func: {
      const double a = eval(*n.lhs, x);
      switch (n.fn) {
        case Fn::Exp: return std::exp(a);
        case Fn::Log: return std::log(a);
        case Fn::Sinh: return std::sinh(a);
        case Fn::Cosh: return std::cosh(a);
        case Fn::Sqrt: return std::sqrt(a);
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
      }
    }
  }
  return 0.0;
}

NodePtr diff(const NodePtr& n, int v) {
  switch (n->kind) {
    case Kind::Const: return make_const(0);
    case Kind::Var: return make_const(n->var == v ? 1.0 : 0.0);
    case Kind::Neg: return make_unary(Kind::Neg, diff(n->lhs, v));
    case Kind::Add: return make_binary(Kind::Add, diff(n->lhs, v), diff(n->rhs, v));
    case Kind::Sub: return make_binary(Kind::Sub, diff(n->lhs, v), diff(n->rhs, v));
    case Kind::Mul:
      return make_binary(Kind::Add, make_binary(Kind::Mul, diff(n->lhs, v), n->rhs),
                         make_binary(Kind::Mul, n->lhs, diff(n->rhs, v)));
    case Kind::Div: {
      // (u'w - u w') / w^2
      auto num = make_binary(Kind::Sub, make_binary(Kind::Mul, diff(n->lhs, v), n->rhs),
                             make_binary(Kind::Mul, n->lhs, diff(n->rhs, v)));
      return make_binary(Kind::Div, num, make_binary(Kind::Pow, n->rhs, make_const(2)));
    }
    case Kind::Pow: {
      const auto& u = n->lhs;
      const auto& w = n->rhs;
      auto du = diff(u, v);
      if (w->kind == Kind::Const) {
        return make_binary(
            Kind::Mul,
            make_binary(Kind::Mul, make_const(w->value),
                        make_binary(Kind::Pow, u, make_const(w->value - 1.0))),
            du);
      }
      // u^w (w' log u + w u'/u)
      auto dw = diff(w, v);
      auto inner = make_binary(Kind::Add, make_binary(Kind::Mul, dw, make_func(Fn::Log, u)),
                               make_binary(Kind::Div, make_binary(Kind::Mul, w, du), u));
      return make_binary(Kind::Mul, n, inner);
    }
    case Kind::Func: {
      const auto& a = n->lhs;
      auto da = diff(a, v);
      NodePtr outer;
      switch (n->fn) {
        case Fn::Exp: outer = n; break;
        case Fn::Log: outer = make_binary(Kind::Div, make_const(1), a); break;
        case Fn::Sinh: outer = make_func(Fn::Cosh, a); break;
        case Fn::Cosh: outer = make_func(Fn::Sinh, a); break;
        case Fn::Sqrt: outer = make_binary(Kind::Div, make_const(0.5), n); break;
        case Fn::Sin: outer = make_func(Fn::Cos, a); break;
        case Fn::Cos: outer = make_unary(Kind::Neg, make_func(Fn::Sin, a)); break;
      }
      return make_binary(Kind::Mul, outer, da);
    }
  }
  return make_const(0);
}

const char* fn_name(Fn fn) {
  switch (fn) {
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
    case Fn::Sinh: return "sinh";
    case Fn::Cosh: return "cosh";
    case Fn::Sqrt: return "sqrt";
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
  }
  return "?";
}

void print(const Node& n, std::ostream& os) {
  switch (n.kind) {
    case Kind::Const: os << n.value; return;
    case Kind::Var: os << n.name; return;
    case Kind::Neg: os << "(-"; print(*n.lhs, os); os << ")"; return;
    case Kind::Func: os << fn_name(n.fn) << "("; print(*n.lhs, os); os << ")"; return;
    default: break;
  }
  const char* op = n.kind == Kind::Add   ? " + "
                   : n.kind == Kind::Sub ? " - "
                   : n.kind == Kind::Mul ? "*"
                   : n.kind == Kind::Div ? "/"
                                         : "^";
  os << "(";
  print(*n.lhs, os);
  os << op;
  print(*n.rhs, os);
  os << ")";
}

}  // namespace

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& vars,
                   const std::map<std::string, double>& consts)
      : text_(text), vars_(vars), consts_(consts) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExpressionError("column " + std::to_string(pos_ + 1) + ": " + msg,
                          static_cast<int>(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make_binary(Kind::Add, n, term());
      else if (accept('-')) n = make_binary(Kind::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make_binary(Kind::Mul, n, unary());
      else if (accept('/')) n = make_binary(Kind::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_unary(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    static const std::map<std::string, Fn> fns = {{"exp", Fn::Exp},   {"log", Fn::Log},
                                                  {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
                                                  {"sqrt", Fn::Sqrt}, {"sin", Fn::Sin},
                                                  {"cos", Fn::Cos}};
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      auto it = fns.find(name);
      if (it == fns.end()) {
        pos_ = start;
        fail("unknown function '" + name + "'");
      }
      ++pos_;
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make_func(it->second, arg);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Var;
        n->var = static_cast<int>(i);
        n->name = name;
        return n;
      }
    }
    if (auto it = consts_.find(name); it != consts_.end()) return make_const(it->second);
    if (name == "pi") return make_const(M_PI);
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  const std::map<std::string, double>& consts_;
  std::size_t pos_ = 0;
};

Expression::Expression() : root_(make_const(0)) {}

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables,
                             const std::map<std::string, double>& constants) {
  ExpressionParser p(text, variables, constants);
  return Expression(p.parse());
}

Expression Expression::constant(double v) { return Expression(make_const(v)); }

double Expression::evaluate(const Vector& vars) const { return eval(*root_, vars); }

Expression Expression::derivative(int index) const { return Expression(diff(root_, index)); }

std::string Expression::to_string() const {
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

bool Expression::is_constant() const { return root_->kind == Kind::Const; }

}  // namespace plg
