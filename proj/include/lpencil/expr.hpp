#pragma once

// Analytic expressions in a handful of named variables: parse, evaluate,
// differentiate symbolically, print canonically.
//
// Grammar (whitespace-insensitive):
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' exponent)*          left-associative
//   exponent := '-' exponent | primary           must not mention a variable
//   primary  := number | name | func '(' expr ')' | '(' expr ')'
//   func     := sin | cos | sinh | cosh | tanh | exp | sqrt
// `pi` and `e` are reserved constants.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lpencil {

enum class UnaryOp { Neg, Sin, Cos, Sinh, Cosh, Tanh, Exp, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

/// Hardware extended precision (80-bit on x86-64).
using ExtReal = long double;

#if defined(LPENCIL_HAVE_QUADMATH)
__extension__ typedef __float128 WideReal;
#else
using WideReal = long double;
#endif

/// Variable name -> value. Small and linear; expressions rarely use more
/// than two variables.
template <class Real>
class BasicBindings {
 public:
  BasicBindings() = default;
  BasicBindings(std::initializer_list<std::pair<std::string_view, Real>> values) {
    for (const auto& [name, value] : values) set(name, value);
  }

  BasicBindings& set(std::string_view name, Real value) {
    for (auto& entry : values_) {
      if (entry.first == name) {
        entry.second = value;
        return *this;
      }
    }
    values_.emplace_back(std::string(name), value);
    return *this;
  }

  std::optional<Real> get(std::string_view name) const {
    for (const auto& entry : values_) {
      if (entry.first == name) return entry.second;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::pair<std::string, Real>> values_;
};

using Bindings = BasicBindings<double>;
/// Extended precision (binary128 where available) for checks that difference
/// nearly cancelling quantities.
using WideBindings = BasicBindings<WideReal>;
using ExtBindings = BasicBindings<ExtReal>;

class Expression {
 public:
  enum class Kind { Constant, Variable, Unary, Binary };
  struct Node;

  /// The literal 0.
  Expression();

  static Expression constant(double value);
  static Expression variable(std::string name);
  // Raw node construction, no folding. The parser uses these so that the
  // tree mirrors the text exactly.
  static Expression make_unary(UnaryOp op, Expression operand);
  static Expression make_binary(BinaryOp op, Expression lhs, Expression rhs);

  double evaluate(const Bindings& bindings) const;
  /// Same tree in extended precision. Constants stay the doubles they were
  /// parsed or folded to.
  WideReal evaluate(const WideBindings& bindings) const;
#if defined(LPENCIL_HAVE_QUADMATH)
  ExtReal evaluate(const ExtBindings& bindings) const;
#endif
  Expression derivative(std::string_view var) const;
  Expression substitute(std::string_view var, const Expression& replacement) const;

  /// Canonical infix form: minimal parentheses, '.' decimal separator,
  /// shortest round-trip numbers.
  std::string to_string() const;

  bool depends_on(std::string_view var) const;
  std::set<std::string> variables() const;
  std::optional<double> constant_value() const;
  bool is_constant(double value) const;

  Kind kind() const;
  double value() const;
  const std::string& name() const;
  UnaryOp unary_op() const;
  BinaryOp binary_op() const;
  Expression operand(std::size_t index) const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Expression parse(std::string_view text, const std::set<std::string>& allowed_vars);

// Folding builders: 0*x -> 0, x+0 -> x, 1*x -> x, constant arithmetic folded.
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression pow(const Expression& base, const Expression& exponent);
Expression apply(UnaryOp op, const Expression& operand);

const char* to_string(UnaryOp op);

}  // namespace lpencil
