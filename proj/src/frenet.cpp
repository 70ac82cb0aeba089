#include "lpencil/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpencil/errors.hpp"

namespace lpencil {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::SpacelikeWithSpacelikeBinormal: return "spacelike curve, spacelike binormal (eps=+1)";
    case CurveKind::SpacelikeWithTimelikeBinormal: return "spacelike curve, timelike binormal (eps=-1)";
    case CurveKind::Timelike: return "timelike curve";
  }
  return "?";
}

std::string_view kind_id(CurveKind kind) {
  switch (kind) {
    case CurveKind::SpacelikeWithSpacelikeBinormal: return "spacelike_spacelike_binormal";
    case CurveKind::SpacelikeWithTimelikeBinormal: return "spacelike_timelike_binormal";
    case CurveKind::Timelike: return "timelike";
  }
  return "?";
}

Curve::Curve(CurveSpec spec) : spec_(std::move(spec)) {
  if (!(spec_.s_range.lo < spec_.s_range.hi)) throw SpecError("curve s_range must satisfy L1 < L2");
  for (const Expression* e : {&spec_.x, &spec_.y, &spec_.z}) {
    for (const auto& v : e->variables()) {
      if (v != "s") throw SpecError("curve components may only depend on s, found '" + v + "'");
    }
  }
  std::array<Expression, 3> current{spec_.x, spec_.y, spec_.z};
  for (auto& order : d_) {
    for (std::size_t c = 0; c < 3; ++c) current[c] = current[c].derivative("s");
    order = current;
  }
}

Vector3 Curve::position(double s) const {
  const Bindings b{{"s", s}};
  return {spec_.x.evaluate(b), spec_.y.evaluate(b), spec_.z.evaluate(b)};
}

Vector3 Curve::derivative(int order, double s) const {
  if (order < 1 || order > 3) throw std::out_of_range("curve derivative order must be 1..3");
  const Bindings b{{"s", s}};
  const auto& d = d_[static_cast<std::size_t>(order - 1)];
  return {d[0].evaluate(b), d[1].evaluate(b), d[2].evaluate(b)};
}

const std::array<Expression, 3>& Curve::derivative_expressions(int order) const {
  if (order < 1 || order > 3) throw std::out_of_range("curve derivative order must be 1..3");
  return d_[static_cast<std::size_t>(order - 1)];
}

double check_unit_speed(const Curve& curve, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("check_unit_speed needs at least 2 samples");
  double worst = 0.0;
  for (double s : curve.s_range().uniform(n_samples)) {
    const Vector3 t = curve.derivative(1, s);
    worst = std::max(worst, std::abs(std::abs(inner(t, t)) - 1.0));
  }
  return worst;
}

namespace {

std::string at(double s) {
  std::ostringstream os;
  os.precision(9);
  os << " at s=" << s;
  return os.str();
}

// Kind of the curve at a single parameter value.
CurveKind kind_at(const Curve& curve, double s) {
  const Vector3 t = curve.derivative(1, s);
  const CausalClass tc = causal_class(t);
  if (tc == CausalClass::Null) throw CurveError(CurveError::Reason::NullTangent, "null tangent" + at(s));

  const Vector3 dt = curve.derivative(2, s);
  const double k = lorentz_norm(dt);
  if (k < kMinCurvature) {
    throw CurveError(CurveError::Reason::VanishingCurvature, "curvature vanishes (or T' is null)" + at(s));
  }
  if (tc == CausalClass::Timelike) return CurveKind::Timelike;

  const Vector3 n = dt / k;
  const Vector3 b = lorentz_cross(t, n);
  return causal_class(b) == CausalClass::Timelike ? CurveKind::SpacelikeWithTimelikeBinormal
                                                  : CurveKind::SpacelikeWithSpacelikeBinormal;
}

}  // namespace

CurveKind classify_curve(const Curve& curve, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("classify_curve needs at least 2 samples");
  const auto grid = curve.s_range().uniform(n_samples);
  const CurveKind first = kind_at(curve, grid.front());
  for (double s : grid) {
    const CurveKind k = kind_at(curve, s);
    if (k != first) {
      throw CurveError(CurveError::Reason::MixedCausalType,
                       std::string("curve changes kind from '") + std::string(to_string(first)) + "' to '" +
                           std::string(to_string(k)) + "'" + at(s));
    }
  }
  return first;
}

template <class Real>
BasicFrame<Real> extended_frame_at(const Curve& curve, Real s) {
  const BasicBindings<Real> b{{"s", s}};
  BasicFrame<Real> f;
  f.T = weval(curve.derivative_expressions(1), b);
  const BasicVec<Real> r2 = weval(curve.derivative_expressions(2), b);
  const BasicVec<Real> r3 = weval(curve.derivative_expressions(3), b);
  f.curvature = wsqrt(wabs(winner(r2, r2)));
  if (!(f.curvature >= kMinCurvature)) {
    throw CurveError(CurveError::Reason::VanishingCurvature, "curvature vanishes" + at(static_cast<double>(s)));
  }
  f.N = (1 / f.curvature) * r2;
  const Real nn = winner(f.N, f.N) < 0 ? -1 : 1;
  f.B = (-nn) * wcross(f.T, f.N);
  f.torsion = -winner(wcross(f.T, r3), f.N) / f.curvature;
  return f;
}

template BasicFrame<ExtReal> extended_frame_at(const Curve&, ExtReal);
#if defined(LPENCIL_HAVE_QUADMATH)
template BasicFrame<WideReal> extended_frame_at(const Curve&, WideReal);
#endif

FrenetFrame frame_at(const Curve& curve, CurveKind kind, double s) {
  const BasicFrame<ExtReal> w = extended_frame_at<ExtReal>(curve, s);
  FrenetFrame f;
  f.s = s;
  f.kind = kind;
  f.T = w.T.narrow();
  f.N = w.N.narrow();
  f.B = w.B.narrow();
  f.curvature = static_cast<double>(w.curvature);
  f.torsion = static_cast<double>(w.torsion);

  const bool t_timelike = causal_class(f.T) == CausalClass::Timelike;
  const bool b_timelike = causal_class(f.B) == CausalClass::Timelike;
  CurveKind actual = CurveKind::Timelike;
  if (!t_timelike) {
    actual = b_timelike ? CurveKind::SpacelikeWithTimelikeBinormal : CurveKind::SpacelikeWithSpacelikeBinormal;
  }
  if (actual != kind) {
    throw CurveError(CurveError::Reason::KindMismatch, std::string("frame is '") + std::string(to_string(actual)) +
                                                           "' but '" + std::string(to_string(kind)) +
                                                           "' was requested" + at(s));
  }
  f.epsilon = kind == CurveKind::SpacelikeWithTimelikeBinormal ? -1 : 1;
  return f;
}

std::vector<std::pair<double, double>> torsion_profile(const Curve& curve, CurveKind kind,
                                                       std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double s : grid) out.emplace_back(s, frame_at(curve, kind, s).torsion);
  return out;
}

}  // namespace lpencil
