#include "lpencil/minkowski.hpp"

#include <algorithm>

#include "lpencil/errors.hpp"

namespace lpencil {

std::string_view to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Null: return "null";
  }
  return "?";
}

double null_tolerance(const Vector3& x) { return 1e-10 * std::max(1.0, euclidean_dot(x, x)); }

CausalClass causal_class(const Vector3& x) {
  if (x == Vector3{}) return CausalClass::Spacelike;
  const double q = inner(x, x);
  const double tol = null_tolerance(x);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return CausalClass::Timelike;
  return CausalClass::Null;
}

Vector3 normalize(const Vector3& x) {
  if (x == Vector3{} || causal_class(x) == CausalClass::Null) {
    throw NullVectorError("cannot normalize a null vector");
  }
  return x / lorentz_norm(x);
}

double timelike_angle(const Vector3& x, const Vector3& y) {
  if (causal_class(x) != CausalClass::Timelike || causal_class(y) != CausalClass::Timelike) {
    throw Error("timelike_angle requires two timelike vectors");
  }
  const double c = std::abs(inner(x, y)) / (lorentz_norm(x) * lorentz_norm(y));
  return std::acosh(std::max(1.0, c));
}

double spacelike_angle(const Vector3& x, const Vector3& y) {
  if (causal_class(x) != CausalClass::Spacelike || causal_class(y) != CausalClass::Spacelike) {
    throw Error("spacelike_angle requires two spacelike vectors");
  }
  const double c = inner(x, y) / (lorentz_norm(x) * lorentz_norm(y));
  if (std::abs(c) > 1.0 + 1e-12) throw Error("vectors span a timelike plane; no spacelike angle exists");
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace lpencil
