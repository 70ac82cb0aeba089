#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "lpencil/expr.hpp"
#include "lpencil/frenet.hpp"
#include "lpencil/pencil.hpp"

namespace lpencil::test {

inline Expression ex(const std::string& text) { return parse(text, {"s", "t", "x"}); }

inline CurveSpec curve(const std::string& x, const std::string& y, const std::string& z, double lo, double hi) {
  return CurveSpec{parse(x, {"s"}), parse(y, {"s"}), parse(z, {"s"}), Range{lo, hi}};
}

// (a sinh(s/c), b s/c, a cosh(s/c)) with a = b = 1, c = sqrt(2).
inline CurveSpec sinh_curve() { return curve("sinh(s/sqrt(2))", "s/sqrt(2)", "cosh(s/sqrt(2))", -2, 2); }
// ((sqrt 3/2) sinh s, s/2, (sqrt 3/2) cosh s).
inline CurveSpec sinh_curve_half() {
  return curve("sqrt(3)/2*sinh(s)", "s/2", "sqrt(3)/2*cosh(s)", 0, 2 * std::numbers::pi);
}
inline CurveSpec circle(double lo = 0.05, double hi = 2 * std::numbers::pi) {
  return curve("cos(s)", "sin(s)", "0", lo, hi);
}
inline CurveSpec hyperbola(double lo = 0.05, double hi = 2 * std::numbers::pi) {
  return curve("cosh(s)", "0", "sinh(s)", lo, hi);
}

inline PencilSpec direct(CurveSpec c, const std::string& u, const std::string& v, const std::string& w,
                         const std::string& lambda = "1", Range t_range = {-1, 1}, double t0 = 0.0,
                         double theta0 = 0.0) {
  PencilSpec spec;
  spec.curve = std::move(c);
  spec.marching = DirectScale{ex(u), ex(v), ex(w)};
  spec.t_range = t_range;
  spec.t0 = t0;
  spec.theta0 = theta0;
  spec.lambda = parse(lambda, {"s"});
  return spec;
}

inline double dist(const Vector3& a, const Vector3& b) { return euclidean_norm(a - b); }

}  // namespace lpencil::test
