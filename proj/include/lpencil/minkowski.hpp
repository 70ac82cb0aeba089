#pragma once

// Vector kernel for Minkowski 3-space with signature (+,+,-).

#include <cmath>
#include <string_view>

namespace lpencil {

struct Vector3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Vector3() = default;
  constexpr Vector3(double a, double b, double c) : x1(a), x2(b), x3(c) {}

  constexpr Vector3& operator+=(const Vector3& o) {
    x1 += o.x1;
    x2 += o.x2;
    x3 += o.x3;
    return *this;
  }
  constexpr Vector3& operator-=(const Vector3& o) {
    x1 -= o.x1;
    x2 -= o.x2;
    x3 -= o.x3;
    return *this;
  }
  constexpr Vector3& operator*=(double k) {
    x1 *= k;
    x2 *= k;
    x3 *= k;
    return *this;
  }

  bool is_finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }

  friend constexpr bool operator==(const Vector3&, const Vector3&) = default;
};

constexpr Vector3 operator+(Vector3 a, const Vector3& b) { return a += b; }
constexpr Vector3 operator-(Vector3 a, const Vector3& b) { return a -= b; }
constexpr Vector3 operator-(const Vector3& a) { return {-a.x1, -a.x2, -a.x3}; }
constexpr Vector3 operator*(double k, Vector3 a) { return a *= k; }
constexpr Vector3 operator*(Vector3 a, double k) { return a *= k; }
constexpr Vector3 operator/(Vector3 a, double k) { return a *= (1.0 / k); }

enum class CausalClass { Spacelike, Timelike, Null };

std::string_view to_string(CausalClass c);

/// x1*y1 + x2*y2 - x3*y3.
constexpr double inner(const Vector3& x, const Vector3& y) { return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3; }

/// Lorentzian vector product. The third component is the negative of the
/// Euclidean one, which makes <X x Y, Z> = det[X Y Z].
constexpr Vector3 lorentz_cross(const Vector3& x, const Vector3& y) {
  return {x.x2 * y.x3 - x.x3 * y.x2, x.x3 * y.x1 - x.x1 * y.x3, x.x2 * y.x1 - x.x1 * y.x2};
}

constexpr double euclidean_dot(const Vector3& x, const Vector3& y) { return x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3; }
inline double euclidean_norm(const Vector3& x) { return std::sqrt(euclidean_dot(x, x)); }

/// Euclidean determinant of the matrix with rows x, y, z.
constexpr double det(const Vector3& x, const Vector3& y, const Vector3& z) { return inner(lorentz_cross(x, y), z); }

/// Relative null tolerance: 1e-10 * max(1, |X|^2).
double null_tolerance(const Vector3& x);

/// Spacelike for <X,X> > tol or X = 0, Timelike for <X,X> < -tol, Null otherwise.
CausalClass causal_class(const Vector3& x);

/// sqrt(|<X,X>|).
inline double lorentz_norm(const Vector3& x) { return std::sqrt(std::abs(inner(x, x))); }

/// X / lorentz_norm(X). Throws NullVectorError for null vectors.
Vector3 normalize(const Vector3& x);

/// Non-negative phi with |<X,Y>| = |X||Y| cosh(phi), for two timelike vectors.
double timelike_angle(const Vector3& x, const Vector3& y);

/// phi in [0, pi] with <X,Y> = |X||Y| cos(phi), for spacelike vectors spanning
/// a spacelike plane.
double spacelike_angle(const Vector3& x, const Vector3& y);

}  // namespace lpencil
