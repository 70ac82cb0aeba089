#pragma once

// Vectors and Minkowski helpers in extended precision: ExtReal (hardware
// long double) and WideReal (binary128 where available).

#include <array>
#include <cmath>

#include "lpencil/expr.hpp"
#include "lpencil/minkowski.hpp"

#if defined(LPENCIL_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace lpencil {

template <class Real>
struct BasicVec {
  Real x1 = 0, x2 = 0, x3 = 0;

  friend BasicVec operator+(const BasicVec& a, const BasicVec& b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
  friend BasicVec operator-(const BasicVec& a, const BasicVec& b) { return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3}; }
  friend BasicVec operator*(Real k, const BasicVec& a) { return {k * a.x1, k * a.x2, k * a.x3}; }

  Vector3 narrow() const { return {static_cast<double>(x1), static_cast<double>(x2), static_cast<double>(x3)}; }
};

using ExtVec = BasicVec<ExtReal>;
using WideVec = BasicVec<WideReal>;

template <class Real>
Real winner(const BasicVec<Real>& a, const BasicVec<Real>& b) {
  return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3;
}

template <class Real>
BasicVec<Real> wcross(const BasicVec<Real>& a, const BasicVec<Real>& b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x2 * b.x1 - a.x1 * b.x2};
}

template <class Real>
Real wabs(Real x) {
  return x < 0 ? -x : x;
}

inline ExtReal wsqrt(ExtReal x) { return std::sqrt(x); }
#if defined(LPENCIL_HAVE_QUADMATH)
inline WideReal wsqrt(WideReal x) { return sqrtq(x); }
#endif

template <class Real>
Real weuclid(const BasicVec<Real>& a) {
  return wsqrt(a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3);
}

template <class Real>
BasicVec<Real> weval(const std::array<Expression, 3>& e, const BasicBindings<Real>& b) {
  return {e[0].evaluate(b), e[1].evaluate(b), e[2].evaluate(b)};
}

}  // namespace lpencil
