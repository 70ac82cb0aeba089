#pragma once

// Numerical check that the curve t = t0 is a line of curvature of a pencil
// member. Each check works on a uniform s-grid over the curve's range.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lpencil/frenet.hpp"
#include "lpencil/minkowski.hpp"
#include "lpencil/pencil.hpp"

namespace lpencil {

struct Tolerances {
  double unit_speed = 1e-6;
  double frame = 1e-9;
  double isoparametric = 1e-9;
  double phi1 = 1e-8;
  double parallelism = 1e-7;
  double rodrigues = 1e-5;
  double family = 1e-8;
  /// min |omega| below this only produces a warning.
  double omega_warn = 1e-8;

  /// Every residual threshold (not omega_warn) set to `value`.
  static Tolerances uniform(double value);
  /// Sets one field by its report name; returns false for unknown names.
  bool set(const std::string& name, double value);
};

struct VerifyOptions {
  Tolerances tol;
  std::size_t n_s = 101;
  std::size_t n_t = 41;
  double fd_step = 1e-5;
};

struct Partials {
  Vector3 ds;
  Vector3 dt;
};

/// dP/ds and dP/dt from the symbolic marching-scale partials and the
/// structural equations.
Partials surface_partials(const SurfacePencil& pencil, double s, double t);
/// Central differences of evaluate_surface with h = 1e-6 * range width.
Partials surface_partials_fd(const SurfacePencil& pencil, double s, double t);

inline constexpr double kMinNormalNorm = 1e-10;

/// dP/ds x dP/dt (Lorentz cross). Throws DegenerateNormalError when its
/// Euclidean norm is below 1e-10.
Vector3 surface_normal(const SurfacePencil& pencil, double s, double t);
Vector3 surface_normal_fd(const SurfacePencil& pencil, double s, double t);

/// Components of the normal along t = t0 in the frame (T, N, B).
struct PhiTriple {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;

  Vector3 combine(const FrenetFrame& f) const { return phi1 * f.T + phi2 * f.N + phi3 * f.B; }
};

/// Closed-form components at (s, t0); with A = 1 + u_s:
///   phi1 = v_s w_t - w_s v_t                              (every kind)
///   spacelike binormal:  phi2 =  A w_t - w_s u_t,  phi3 =  A v_t - v_s u_t
///   timelike binormal:   phi2 = -A w_t + w_s u_t,  phi3 = -A v_t + v_s u_t
///   timelike curve:      phi2 =  A w_t - w_s u_t,  phi3 = -A v_t + v_s u_t
/// Valid when u, v, w vanish at t0.
PhiTriple phi_decompose(const SurfacePencil& pencil, double s);

/// max over the grid of ||P(s, t0) - r(s)||.
double isoparametric_residual(const SurfacePencil& pencil, std::size_t n_s);

struct ParallelismResult {
  double residual = 0.0;
  /// Proportionality factor <n, n1>/<n1, n1> of the Euclidean-unit normal.
  double min_abs_lambda = std::numeric_limits<double>::infinity();
  std::size_t lambda_sign_changes = 0;
};

/// Euclidean norm of the part of n(s, t0)/||n|| that is Lorentz-orthogonal
/// to the reference normal n1(s), maximised over the grid.
ParallelismResult parallelism_check(const SurfacePencil& pencil, std::size_t n_s);
double parallelism_residual(const SurfacePencil& pencil, std::size_t n_s);

struct RodriguesResult {
  double residual = 0.0;
  double min_abs_omega = std::numeric_limits<double>::infinity();
  /// Some normal was numerically null and was scaled to Euclidean length 1.
  bool euclidean_fallback = false;
};

/// n^ = n(s, t0) scaled to |<n^, n^>| = 1; residual is the Euclidean norm of
/// dn^/ds - omega T with omega = <dn^/ds, T>/<T, T>, dn^/ds by central
/// differences of step h.
RodriguesResult rodrigues_check(const SurfacePencil& pencil, std::size_t n_s, double h = 1e-5);
double rodrigues_residual(const SurfacePencil& pencil, std::size_t n_s, double h = 1e-5);

struct CausalReport {
  CausalClass required = CausalClass::Timelike;
  std::size_t nodes = 0;
  std::size_t conforming = 0;
  std::size_t null_nodes = 0;
  std::size_t degenerate_nodes = 0;
  /// Largest |<n, n>| of a normal with the wrong sign (Euclidean-unit n).
  double worst_violation = 0.0;
  std::size_t curve_nodes = 0;
  std::size_t curve_conforming = 0;

  double fraction() const { return nodes ? static_cast<double>(conforming) / static_cast<double>(nodes) : 1.0; }
  bool curve_pass() const { return curve_nodes == curve_conforming; }
};

/// Classifies the normal at every lattice node of `mesh`. Timelike normals
/// are required for a spacelike surface, spacelike normals otherwise.
CausalReport surface_causal_check(const SurfacePencil& pencil, const SurfaceMesh& mesh);

struct CheckRecord {
  std::string name;
  /// +inf when the check could not be evaluated.
  double residual = std::numeric_limits<double>::infinity();
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::optional<CurveKind> kind;
  std::vector<CheckRecord> checks;
  std::vector<std::string> warnings;
  std::optional<ConditionReport> conditions;
  std::string normalization = "lorentzian";
  bool overall = false;

  const CheckRecord* find(const std::string& name) const;
  std::vector<std::string> failing() const;
};

/// Check names in report order.
const std::vector<std::string>& check_names();

/// Runs every check. Never throws for a bad pencil: failures become records
/// with an infinite residual and the error text in `detail`.
VerificationReport verify_all(const PencilSpec& spec, const VerifyOptions& options = {});

}  // namespace lpencil
