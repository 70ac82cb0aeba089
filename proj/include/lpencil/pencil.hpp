#pragma once

// Surface pencils through a prescribed curve:
//   P(s,t) = r(s) + u(s,t) T(s) + v(s,t) N(s) + w(s,t) B(s)
// together with the angle function theta(s) and the coupling conditions for
// the two structured marching-scale families.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lpencil/expr.hpp"
#include "lpencil/frenet.hpp"
#include "lpencil/minkowski.hpp"
#include "lpencil/range.hpp"

namespace lpencil {

/// u, v, w given explicitly as expressions in (s, t).
struct DirectScale {
  Expression u;
  Expression v;
  Expression w;
};

/// u = sum_k a[0][k] l(s)^k U(t)^k, v likewise with (m, V), w with (n, W).
/// `a[i]` holds the p coefficients a_{i+1,1..p}.
struct PolynomialFamily {
  int p = 1;
  std::array<std::vector<double>, 3> a;
  Expression l, m, n;  // in s
  Expression U, V, W;  // in t
};

/// u = f(sum ...), v = g(sum ...), w = h(sum ...); f, g, h are in `x`.
struct ComposedFamily {
  PolynomialFamily base;
  Expression f, g, h;
};

using MarchingScale = std::variant<DirectScale, PolynomialFamily, ComposedFamily>;

struct PencilSpec {
  CurveSpec curve;
  MarchingScale marching;
  double t0 = 0.0;
  Range t_range{-1.0, 1.0};
  double theta0 = 0.0;
  Expression lambda = Expression::constant(1.0);
  /// Auto-classified when empty; checked against the curve when given.
  std::optional<CurveKind> kind;
};

enum class SurfaceType { Spacelike, Timelike };

/// Spacelike surface (timelike normal) for a spacelike curve with spacelike
/// binormal, timelike surface otherwise.
SurfaceType surface_type_for(CurveKind kind);

/// u, v, w and their first partials at one (s, t).
struct ScaleValues {
  double u = 0, v = 0, w = 0;
  double u_s = 0, v_s = 0, w_s = 0;
  double u_t = 0, v_t = 0, w_t = 0;
};

/// A validated pencil with the marching-scale functions resolved into
/// expressions in (s, t) and their partial derivatives precomputed.
/// Immutable after construction; all queries are thread-safe.
class SurfacePencil {
 public:
  /// `validation_samples` is the s-grid used to classify the curve and to
  /// check that lambda does not vanish.
  explicit SurfacePencil(PencilSpec spec, std::size_t validation_samples = 101);

  const PencilSpec& spec() const { return spec_; }
  const Curve& curve() const { return curve_; }
  CurveKind kind() const { return kind_; }
  SurfaceType surface_type() const { return surface_type_for(kind_); }

  FrenetFrame frame(double s) const { return frame_at(curve_, kind_, s); }
  ScaleValues scale(double s, double t) const;
  double lambda(double s) const;

  const Expression& u() const { return uvw_[0]; }
  const Expression& v() const { return uvw_[1]; }
  const Expression& w() const { return uvw_[2]; }
  /// (u_s, v_s, w_s) and (u_t, v_t, w_t).
  const std::array<Expression, 3>& scale_ds() const { return d_s_; }
  const std::array<Expression, 3>& scale_dt() const { return d_t_; }

 private:
  PencilSpec spec_;
  Curve curve_;
  CurveKind kind_;
  std::array<Expression, 3> uvw_;
  std::array<Expression, 3> d_s_;
  std::array<Expression, 3> d_t_;
};

/// u, v, w as expressions in (s, t) for any marching-scale variant.
std::array<Expression, 3> resolve_marching_scale(const MarchingScale& ms);

/// theta0 - int_0^s tau for spacelike curves, theta0 + int_0^s tau for
/// timelike curves; adaptive Simpson with absolute tolerance 1e-10.
double theta_at(const SurfacePencil& pencil, double s);

/// theta at every node of an increasing grid, integrating segment by segment.
std::vector<double> theta_profile(const SurfacePencil& pencil, std::span<const double> grid);

/// cosh(theta) N + sinh(theta) B for spacelike curves,
/// cos(theta) N + sin(theta) B for timelike curves.
Vector3 reference_normal(const FrenetFrame& frame, double theta);

Vector3 evaluate_surface(const SurfacePencil& pencil, double s, double t);

/// Uniform lattice over s_range x t_range; vertex (i, j) sits at i * nt + j.
/// The t-node nearest to t0 is moved onto t0 exactly so the curve is a row
/// of the mesh.
struct SurfaceMesh {
  std::size_t ns = 0;
  std::size_t nt = 0;
  std::vector<double> s_values;
  std::vector<double> t_values;
  std::vector<Vector3> vertices;
  std::size_t curve_column = 0;

  const Vector3& at(std::size_t i, std::size_t j) const { return vertices[i * nt + j]; }
  /// Vertex indices (0-based) of the t = t0 row.
  std::vector<std::size_t> curve_row() const;
};

/// The (s, t) lattice of a mesh with no vertices evaluated.
SurfaceMesh make_lattice(const SurfacePencil& pencil, std::size_t ns, std::size_t nt);

enum class Execution { Sequential, Parallel };

/// Every vertex is evaluated independently, so both execution modes produce
/// identical bits.
SurfaceMesh sample_grid(const SurfacePencil& pencil, std::size_t ns, std::size_t nt,
                        Execution exec = Execution::Parallel);

struct ConditionRecord {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ConditionReport {
  CurveKind kind = CurveKind::SpacelikeWithSpacelikeBinormal;
  std::vector<ConditionRecord> records;
  bool pass = false;

  const ConditionRecord* find(const std::string& name) const;
};

/// Family conditions on an s-grid. Throws SpecError for Direct specs, which
/// have no family structure to check.
///   vanishing_at_t0     U(t0), V(t0), W(t0) (and f(0), g(0), h(0))
///   theta_consistency   theta on the grid equals theta_at pointwise
///   coupling_v          [g'(0)] a21 m(s) V'(t0) - rhs_v(s)
///   coupling_w          [h'(0)] a31 n(s) W'(t0) - rhs_w(s)
/// with (rhs_v, rhs_w) = ( lambda sinh, lambda cosh)  spacelike binormal
///                       (-lambda sinh, -lambda cosh) timelike binormal
///                       ( lambda sin, -lambda cos)   timelike curve
ConditionReport check_family_conditions(const SurfacePencil& pencil, std::size_t n_s = 101,
                                        double threshold = 1e-8);

}  // namespace lpencil
