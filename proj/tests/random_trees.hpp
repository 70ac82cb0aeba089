#pragma once

#include <cmath>
#include <random>

#include "lpencil/expr.hpp"

namespace lpencil::test {

// Random trees whose values stay moderate: exponential-type functions only
// see sin() of something, square roots, denominators and powers get
// arguments bounded away from zero.
inline Expression random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> num(-2.0, 2.0);
  if (depth == 0 || pick(rng) < 2) {
    switch (pick(rng) % 3) {
      case 0: return Expression::variable("s");
      case 1: return Expression::variable("t");
      default: return Expression::constant(std::round(num(rng) * 100) / 100);
    }
  }
  const Expression a = random_tree(rng, depth - 1);
  const Expression one = Expression::constant(1.0);
  const Expression two = Expression::constant(2.0);
  switch (pick(rng)) {
    case 0: return Expression::make_binary(BinaryOp::Add, a, random_tree(rng, depth - 1));
    case 1: return Expression::make_binary(BinaryOp::Sub, a, random_tree(rng, depth - 1));
    case 2: return Expression::make_binary(BinaryOp::Mul, a, random_tree(rng, depth - 1));
    case 3:
      return Expression::make_binary(
          BinaryOp::Div, a,
          Expression::make_binary(BinaryOp::Add, two,
                                  Expression::make_unary(UnaryOp::Cos, random_tree(rng, depth - 1))));
    case 4: return Expression::make_unary(pick(rng) % 2 ? UnaryOp::Sin : UnaryOp::Cos, a);
    case 5: {
      const UnaryOp ops[] = {UnaryOp::Sinh, UnaryOp::Cosh, UnaryOp::Exp, UnaryOp::Tanh};
      return Expression::make_unary(ops[pick(rng) % 4], Expression::make_unary(UnaryOp::Sin, a));
    }
    case 6:
      return Expression::make_unary(
          UnaryOp::Sqrt, Expression::make_binary(BinaryOp::Add, one, Expression::make_binary(BinaryOp::Mul, a, a)));
    case 7: {
      const double exps[] = {2.0, 3.0, 0.5, -1.0};
      const Expression base =
          Expression::make_binary(BinaryOp::Add, two, Expression::make_unary(UnaryOp::Cos, a));
      return Expression::make_binary(BinaryOp::Pow, base, Expression::constant(exps[pick(rng) % 4]));
    }
    case 8: return Expression::make_unary(UnaryOp::Neg, a);
    default: return a;
  }
}

}  // namespace lpencil::test
