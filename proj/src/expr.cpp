#include "lpencil/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#if defined(LPENCIL_HAVE_QUADMATH)
#include <quadmath.h>
#endif

#include "lpencil/errors.hpp"

namespace lpencil {

struct Expression::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::string name;
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

// ---------------------------------------------------------------- construction

Expression::Expression() : Expression(constant(0.0)) {}

Expression Expression::constant(double value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->value = value;
  return Expression(std::move(node));
}

Expression Expression::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->name = std::move(name);
  return Expression(std::move(node));
}

Expression Expression::make_unary(UnaryOp op, Expression operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Unary;
  node->uop = op;
  node->lhs = std::move(operand.node_);
  return Expression(std::move(node));
}

Expression Expression::make_binary(BinaryOp op, Expression lhs, Expression rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Binary;
  node->bop = op;
  node->lhs = std::move(lhs.node_);
  node->rhs = std::move(rhs.node_);
  return Expression(std::move(node));
}

Expression::Kind Expression::kind() const { return node_->kind; }
double Expression::value() const { return node_->value; }
const std::string& Expression::name() const { return node_->name; }
UnaryOp Expression::unary_op() const { return node_->uop; }
BinaryOp Expression::binary_op() const { return node_->bop; }

Expression Expression::operand(std::size_t index) const {
  const auto& child = index == 0 ? node_->lhs : node_->rhs;
  if (!child) throw std::out_of_range("expression node has no operand " + std::to_string(index));
  return Expression(child);
}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Sinh: return "sinh";
    case UnaryOp::Cosh: return "cosh";
    case UnaryOp::Tanh: return "tanh";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

// ---------------------------------------------------------------- printing

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expression::Node& n) {
  switch (n.kind) {
    case Expression::Kind::Constant:
      return std::signbit(n.value) ? kPrecNeg : kPrecAtom;
    case Expression::Kind::Variable:
      return kPrecAtom;
    case Expression::Kind::Unary:
      return n.uop == UnaryOp::Neg ? kPrecNeg : kPrecAtom;
    case Expression::Kind::Binary:
      switch (n.bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return kPrecAdd;
        case BinaryOp::Mul:
        case BinaryOp::Div: return kPrecMul;
        case BinaryOp::Pow: return kPrecPow;
      }
  }
  return kPrecAtom;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

void print(const Expression::Node& n, std::string& out);

void print_child(const Expression::Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Expression::Node& n, std::string& out) {
  switch (n.kind) {
    case Expression::Kind::Constant:
      out += format_number(n.value);
      return;
    case Expression::Kind::Variable:
      out += n.name;
      return;
    case Expression::Kind::Unary:
      if (n.uop == UnaryOp::Neg) {
        out += '-';
        print_child(*n.lhs, precedence(*n.lhs) < kPrecNeg, out);
      } else {
        out += to_string(n.uop);
        print_child(*n.lhs, true, out);
      }
      return;
    case Expression::Kind::Binary: {
      const int p = precedence(n);
      if (n.bop == BinaryOp::Pow) {
        print_child(*n.lhs, precedence(*n.lhs) < kPrecPow, out);
        out += '^';
        print_child(*n.rhs, precedence(*n.rhs) <= kPrecPow, out);
        return;
      }
      print_child(*n.lhs, precedence(*n.lhs) < p, out);
      switch (n.bop) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += " * "; break;
        case BinaryOp::Div: out += " / "; break;
        case BinaryOp::Pow: break;
      }
      print_child(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

std::string node_text(const Expression::Node& n) {
  std::string out;
  print(n, out);
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace wide_math {

using std::cos;
using std::cosh;
using std::exp;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;
using std::trunc;

#if defined(LPENCIL_HAVE_QUADMATH)
inline WideReal sin(WideReal x) { return sinq(x); }
inline WideReal cos(WideReal x) { return cosq(x); }
inline WideReal sinh(WideReal x) { return sinhq(x); }
inline WideReal cosh(WideReal x) { return coshq(x); }
inline WideReal tanh(WideReal x) { return tanhq(x); }
inline WideReal exp(WideReal x) { return expq(x); }
inline WideReal sqrt(WideReal x) { return sqrtq(x); }
inline WideReal pow(WideReal x, WideReal y) { return powq(x, y); }
inline WideReal trunc(WideReal x) { return truncq(x); }
#endif

}  // namespace wide_math

template <class Real>
Real eval(const Expression::Node& n, const BasicBindings<Real>& b) {
  using namespace wide_math;
  switch (n.kind) {
    case Expression::Kind::Constant:
      return Real(n.value);
    case Expression::Kind::Variable: {
      auto v = b.get(n.name);
      if (!v) throw DomainError(n.name, "variable is not bound");
      return *v;
    }
    case Expression::Kind::Unary: {
      const Real x = eval(*n.lhs, b);
      switch (n.uop) {
        case UnaryOp::Neg: return -x;
        case UnaryOp::Sin: return sin(x);
        case UnaryOp::Cos: return cos(x);
        case UnaryOp::Sinh: return sinh(x);
        case UnaryOp::Cosh: return cosh(x);
        case UnaryOp::Tanh: return tanh(x);
        case UnaryOp::Exp: return exp(x);
        case UnaryOp::Sqrt:
          if (x < 0.0) throw DomainError(node_text(n), "square root of a negative number");
          return sqrt(x);
      }
      break;
    }
    case Expression::Kind::Binary: {
      const Real x = eval(*n.lhs, b);
      const Real y = eval(*n.rhs, b);
      switch (n.bop) {
        case BinaryOp::Add: return x + y;
        case BinaryOp::Sub: return x - y;
        case BinaryOp::Mul: return x * y;
        case BinaryOp::Div:
          if (y == 0.0) throw DomainError(node_text(n), "division by zero");
          return x / y;
        case BinaryOp::Pow:
          if (x < 0.0 && trunc(y) != y)
            throw DomainError(node_text(n), "negative base with non-integer exponent");
          if (x == 0.0 && y < 0.0) throw DomainError(node_text(n), "division by zero");
          return pow(x, y);
      }
      break;
    }
  }
  return Real(0);
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expression::Kind::Constant:
      // Bitwise, so that 0 and -0 print differently and compare differently.
      return std::signbit(a->value) == std::signbit(b->value) && a->value == b->value;
    case Expression::Kind::Variable:
      return a->name == b->name;
    case Expression::Kind::Unary:
      return a->uop == b->uop && equal(a->lhs, b->lhs);
    case Expression::Kind::Binary:
      return a->bop == b->bop && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
  return false;
}

// ---------------------------------------------------------------- parsing

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>& allowed) : text_(text), allowed_(allowed) {}

  Expression parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
    Expression e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  Expression parse_expr() {
    Expression lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expression::make_binary(BinaryOp::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expression::make_binary(BinaryOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_term() {
    Expression lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expression::make_binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expression::make_binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary() {
    if (accept('-')) return Expression::make_unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    while (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      Expression exponent = parse_exponent();
      if (!exponent.variables().empty()) throw ParseError(at, "exponent must be a constant");
      base = Expression::make_binary(BinaryOp::Pow, base, exponent);
    }
    return base;
  }

  Expression parse_exponent() {
    if (accept('-')) return Expression::make_unary(UnaryOp::Neg, parse_exponent());
    return parse_primary();
  }

  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Expression parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = parse_expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  Expression parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && is_digit(text_[look])) {
        pos_ = look;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError(start, "malformed number");
    return Expression::constant(value);
  }

  Expression parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    static constexpr std::array<std::pair<std::string_view, UnaryOp>, 7> kFunctions{{
        {"sin", UnaryOp::Sin},
        {"cos", UnaryOp::Cos},
        {"sinh", UnaryOp::Sinh},
        {"cosh", UnaryOp::Cosh},
        {"tanh", UnaryOp::Tanh},
        {"exp", UnaryOp::Exp},
        {"sqrt", UnaryOp::Sqrt},
    }};

    skip_ws();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';
    for (const auto& [fname, op] : kFunctions) {
      if (name == fname) {
        if (!call) throw ParseError(start, "function '" + name + "' requires a parenthesised argument");
        ++pos_;
        Expression arg = parse_expr();
        expect(')');
        return Expression::make_unary(op, arg);
      }
    }
    if (call) throw ParseError(start, "unknown identifier '" + name + "'");
    if (name == "pi") return Expression::constant(std::numbers::pi);
    if (name == "e") return Expression::constant(std::numbers::e);
    if (!allowed_.contains(name)) throw ParseError(start, "undeclared variable " + name);
    return Expression::variable(name);
  }

  std::string_view text_;
  const std::set<std::string>& allowed_;
  std::size_t pos_ = 0;
};

bool is_reserved(const std::string& name) {
  static const std::set<std::string> kReserved{"sin", "cos", "sinh", "cosh", "tanh", "exp", "sqrt", "pi", "e"};
  return kReserved.contains(name);
}

}  // namespace

// ---------------------------------------------------------------- public API

double Expression::evaluate(const Bindings& bindings) const { return eval(*node_, bindings); }
WideReal Expression::evaluate(const WideBindings& bindings) const { return eval(*node_, bindings); }
#if defined(LPENCIL_HAVE_QUADMATH)
ExtReal Expression::evaluate(const ExtBindings& bindings) const { return eval(*node_, bindings); }
#endif

std::string Expression::to_string() const { return node_text(*node_); }

bool operator==(const Expression& a, const Expression& b) { return equal(a.node_, b.node_); }

std::optional<double> Expression::constant_value() const {
  if (node_->kind == Kind::Constant) return node_->value;
  return std::nullopt;
}

bool Expression::is_constant(double value) const {
  return node_->kind == Kind::Constant && node_->value == value;
}

bool Expression::depends_on(std::string_view var) const {
  switch (node_->kind) {
    case Kind::Constant: return false;
    case Kind::Variable: return node_->name == var;
    case Kind::Unary: return operand(0).depends_on(var);
    case Kind::Binary: return operand(0).depends_on(var) || operand(1).depends_on(var);
  }
  return false;
}

std::set<std::string> Expression::variables() const {
  std::set<std::string> out;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->kind == Kind::Variable) out.insert(n->name);
    if (n->lhs) stack.push_back(n->lhs.get());
    if (n->rhs) stack.push_back(n->rhs.get());
  }
  return out;
}

Expression Expression::substitute(std::string_view var, const Expression& replacement) const {
  switch (node_->kind) {
    case Kind::Constant: return *this;
    case Kind::Variable: return node_->name == var ? replacement : *this;
    case Kind::Unary: return apply(node_->uop, operand(0).substitute(var, replacement));
    case Kind::Binary: {
      Expression a = operand(0).substitute(var, replacement);
      Expression b = operand(1).substitute(var, replacement);
      switch (node_->bop) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a / b;
        case BinaryOp::Pow: return pow(a, b);
      }
    }
  }
  return *this;
}

Expression Expression::derivative(std::string_view var) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return constant(0.0);
    case Kind::Variable:
      return constant(n.name == var ? 1.0 : 0.0);
    case Kind::Unary: {
      const Expression a = operand(0);
      const Expression da = a.derivative(var);
      if (da.is_constant(0.0)) return constant(0.0);
      switch (n.uop) {
        case UnaryOp::Neg: return -da;
        case UnaryOp::Sin: return apply(UnaryOp::Cos, a) * da;
        case UnaryOp::Cos: return -(apply(UnaryOp::Sin, a) * da);
        case UnaryOp::Sinh: return apply(UnaryOp::Cosh, a) * da;
        case UnaryOp::Cosh: return apply(UnaryOp::Sinh, a) * da;
        case UnaryOp::Tanh:
          return (constant(1.0) - pow(apply(UnaryOp::Tanh, a), constant(2.0))) * da;
        case UnaryOp::Exp: return apply(UnaryOp::Exp, a) * da;
        case UnaryOp::Sqrt: return da / (constant(2.0) * apply(UnaryOp::Sqrt, a));
      }
      break;
    }
    case Kind::Binary: {
      const Expression a = operand(0);
      const Expression b = operand(1);
      const Expression da = a.derivative(var);
      switch (n.bop) {
        case BinaryOp::Add: return da + b.derivative(var);
        case BinaryOp::Sub: return da - b.derivative(var);
        case BinaryOp::Mul: return da * b + a * b.derivative(var);
        case BinaryOp::Div: {
          if (!b.depends_on(var)) return da / b;
          const Expression db = b.derivative(var);
          return (da * b - a * db) / pow(b, constant(2.0));
        }
        case BinaryOp::Pow:
          // Exponents are constant by construction.
          return b * pow(a, b - constant(1.0)) * da;
      }
      break;
    }
  }
  return constant(0.0);
}

Expression parse(std::string_view text, const std::set<std::string>& allowed_vars) {
  for (const auto& v : allowed_vars) {
    if (is_reserved(v)) throw ParseError(0, "'" + v + "' is reserved and cannot be a variable");
  }
  return Parser(text, allowed_vars).parse_all();
}

// ---------------------------------------------------------------- folding builders

namespace {

std::optional<double> fold(const Expression& e) { return e.constant_value(); }

}  // namespace

Expression operator+(const Expression& a, const Expression& b) {
  auto ca = fold(a), cb = fold(b);
  if (ca && cb) return Expression::constant(*ca + *cb);
  if (ca && *ca == 0.0) return b;
  if (cb && *cb == 0.0) return a;
  return Expression::make_binary(BinaryOp::Add, a, b);
}

Expression operator-(const Expression& a, const Expression& b) {
  auto ca = fold(a), cb = fold(b);
  if (ca && cb) return Expression::constant(*ca - *cb);
  if (cb && *cb == 0.0) return a;
  if (ca && *ca == 0.0) return -b;
  return Expression::make_binary(BinaryOp::Sub, a, b);
}

Expression operator*(const Expression& a, const Expression& b) {
  auto ca = fold(a), cb = fold(b);
  if (ca && cb) return Expression::constant(*ca * *cb);
  if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return Expression::constant(0.0);
  if (ca && *ca == 1.0) return b;
  if (cb && *cb == 1.0) return a;
  if (ca && *ca == -1.0) return -b;
  if (cb && *cb == -1.0) return -a;
  if (cb) return Expression::make_binary(BinaryOp::Mul, b, a);
  return Expression::make_binary(BinaryOp::Mul, a, b);
}

Expression operator/(const Expression& a, const Expression& b) {
  auto ca = fold(a), cb = fold(b);
  if (ca && cb && *cb != 0.0) return Expression::constant(*ca / *cb);
  if (ca && *ca == 0.0) return Expression::constant(0.0);
  if (cb && *cb == 1.0) return a;
  return Expression::make_binary(BinaryOp::Div, a, b);
}

Expression operator-(const Expression& a) {
  if (auto ca = fold(a)) return Expression::constant(-*ca);
  if (a.kind() == Expression::Kind::Unary && a.unary_op() == UnaryOp::Neg) return a.operand(0);
  return Expression::make_unary(UnaryOp::Neg, a);
}

Expression pow(const Expression& base, const Expression& exponent) {
  auto cb = fold(base), ce = fold(exponent);
  if (ce && *ce == 0.0) return Expression::constant(1.0);
  if (ce && *ce == 1.0) return base;
  if (cb && ce && !(*cb < 0.0 && std::trunc(*ce) != *ce) && !(*cb == 0.0 && *ce < 0.0))
    return Expression::constant(std::pow(*cb, *ce));
  return Expression::make_binary(BinaryOp::Pow, base, exponent);
}

Expression apply(UnaryOp op, const Expression& operand) {
  if (op == UnaryOp::Neg) return -operand;
  if (auto c = fold(operand)) {
    if (!(op == UnaryOp::Sqrt && *c < 0.0)) {
      return Expression::constant(Expression::make_unary(op, operand).evaluate(Bindings{}));
    }
  }
  return Expression::make_unary(op, operand);
}

}  // namespace lpencil
