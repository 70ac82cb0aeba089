#pragma once

#include <cmath>
#include <sstream>

#include "lpencil/errors.hpp"

namespace lpencil {

inline constexpr int kSimpsonMaxDepth = 20;

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= kSimpsonMaxDepth) {
    std::ostringstream os;
    os << "adaptive Simpson did not converge on [" << a << ", " << b << "] after " << kSimpsonMaxDepth
       << " refinement levels";
    throw QuadratureError(os.str());
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Simpson with absolute tolerance `tol`. The interval is split in
/// four before the error test starts so a lucky first estimate on an
/// oscillating integrand is not accepted. Reversed bounds give the negated
/// integral.
template <class F>
double integrate_simpson(const F& f, double a, double b, double tol = 1e-10) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_simpson(f, b, a, tol);
  constexpr int kPieces = 4;
  const double h = (b - a) / kPieces;
  double total = 0.0;
  double fa = f(a);
  for (int i = 0; i < kPieces; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == kPieces ? b : a + h * (i + 1);
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    const double fb = f(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / kPieces, 1);
    fa = fb;
  }
  return total;
}

}  // namespace lpencil
