#pragma once

// Frenet apparatus of unit-speed curves in Minkowski 3-space.
//
// Structural equations, by curve kind:
//   spacelike curve:  T' = kN,  N' = eps*k*T + tau*B,  B' = tau*N
//   timelike curve:   T' = kN,  N' = k*T - tau*B,      B' = tau*N
//
// For a spacelike curve the T-coefficient of N' is <N',T> = -k<N,N>, so
// eps = -<N,N> = <B,B>: +1 when B is spacelike (N timelike), -1 when B is
// timelike (N spacelike). For a timelike curve the same identity gives
// <N',T>/<T,T> = k<N,N> = +k, and `epsilon` is reported as +1.
//
// The binormal is B = -<N,N> (T x N). This gives det[T N B] = +1 for both
// spacelike kinds and det[T N B] = -1 for timelike curves, and reproduces
// the closed-form frames of the reference examples:
//   (sinh(s/c), s/c, cosh(s/c))/..  -> B = (cosh/c, -1/c, sinh/c)
//   (cos s, sin s, 0)               -> B = (0, 0, 1)
//   (cosh s, 0, sinh s)             -> B = (0, -1, 0)
// Torsion is then tau = <B',N>/<N,N> = -<T x r''', N>/k for every kind.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lpencil/expr.hpp"
#include "lpencil/minkowski.hpp"
#include "lpencil/range.hpp"
#include "lpencil/wide.hpp"

namespace lpencil {

struct CurveSpec {
  Expression x;
  Expression y;
  Expression z;
  Range s_range;
};

enum class CurveKind {
  SpacelikeWithSpacelikeBinormal,  // eps = +1
  SpacelikeWithTimelikeBinormal,   // eps = -1
  Timelike,
};

std::string_view to_string(CurveKind kind);
/// Stable snake_case identifier used in reports.
std::string_view kind_id(CurveKind kind);

/// A curve together with its symbolic first three derivatives.
class Curve {
 public:
  explicit Curve(CurveSpec spec);

  const CurveSpec& spec() const { return spec_; }
  const Range& s_range() const { return spec_.s_range; }

  Vector3 position(double s) const;
  /// order in 1..3.
  Vector3 derivative(int order, double s) const;
  const std::array<Expression, 3>& derivative_expressions(int order) const;

 private:
  CurveSpec spec_;
  std::array<std::array<Expression, 3>, 3> d_;
};

struct FrenetFrame {
  double s = 0.0;
  Vector3 T;
  Vector3 N;
  Vector3 B;
  double curvature = 0.0;
  double torsion = 0.0;
  int epsilon = 1;
  CurveKind kind = CurveKind::SpacelikeWithSpacelikeBinormal;
};

inline constexpr double kMinCurvature = 1e-9;
inline constexpr double kUnitSpeedTolerance = 1e-6;

/// max over n uniform samples of ||<r',r'>| - 1|.
double check_unit_speed(const Curve& curve, std::size_t n_samples);

/// Throws CurveError on null tangents, vanishing curvature or a kind that
/// changes over the range.
CurveKind classify_curve(const Curve& curve, std::size_t n_samples);

/// The frame algebra runs in ExtReal: at hyperbolic ranges <r'',r''> is a
/// difference of two large squares and loses most of its digits in double.
FrenetFrame frame_at(const Curve& curve, CurveKind kind, double s);

template <class Real>
struct BasicFrame {
  BasicVec<Real> T, N, B;
  Real curvature = 0, torsion = 0;
};

using WideFrame = BasicFrame<WideReal>;

/// Frame with no kind check, for Real = ExtReal or WideReal. Throws
/// CurveError when the curvature vanishes.
template <class Real>
BasicFrame<Real> extended_frame_at(const Curve& curve, Real s);

std::vector<std::pair<double, double>> torsion_profile(const Curve& curve, CurveKind kind,
                                                       std::span<const double> grid);

}  // namespace lpencil
