#include "lpencil/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "lpencil/errors.hpp"
#include "lpencil/quadrature.hpp"

namespace lpencil {

namespace {

void require_vars(const Expression& e, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& v : e.variables()) {
    if (!allowed.contains(v)) throw SpecError(what + " may not depend on '" + v + "'");
  }
}

Expression family_sum(const std::vector<double>& coeffs, const Expression& in_s, const Expression& in_t) {
  Expression sum = Expression::constant(0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Expression power = Expression::constant(static_cast<double>(k + 1));
    sum = sum + Expression::constant(coeffs[k]) * pow(in_s, power) * pow(in_t, power);
  }
  return sum;
}

void validate_family(const PolynomialFamily& fam) {
  if (fam.p < 1) throw SpecError("marching-scale family needs p >= 1");
  for (std::size_t i = 0; i < 3; ++i) {
    if (fam.a[i].size() != static_cast<std::size_t>(fam.p)) {
      throw SpecError("coefficient row a" + std::to_string(i + 1) + " must have p = " + std::to_string(fam.p) +
                      " entries");
    }
  }
  require_vars(fam.l, {"s"}, "l");
  require_vars(fam.m, {"s"}, "m");
  require_vars(fam.n, {"s"}, "n");
  require_vars(fam.U, {"t"}, "U");
  require_vars(fam.V, {"t"}, "V");
  require_vars(fam.W, {"t"}, "W");
}

std::string describe(double s, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "(s=" << s << ", t=" << t << ")";
  return os.str();
}

Vector3 point_on(const SurfacePencil& pencil, const FrenetFrame& f, const Vector3& r, double t) {
  const Bindings b{{"s", f.s}, {"t", t}};
  const double u = pencil.u().evaluate(b);
  const double v = pencil.v().evaluate(b);
  const double w = pencil.w().evaluate(b);
  return r + u * f.T + v * f.N + w * f.B;
}

}  // namespace

SurfaceType surface_type_for(CurveKind kind) {
  return kind == CurveKind::SpacelikeWithSpacelikeBinormal ? SurfaceType::Spacelike : SurfaceType::Timelike;
}

std::array<Expression, 3> resolve_marching_scale(const MarchingScale& ms) {
  return std::visit(
      [](const auto& m) -> std::array<Expression, 3> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DirectScale>) {
          require_vars(m.u, {"s", "t"}, "u");
          require_vars(m.v, {"s", "t"}, "v");
          require_vars(m.w, {"s", "t"}, "w");
          return {m.u, m.v, m.w};
        } else if constexpr (std::is_same_v<M, PolynomialFamily>) {
          validate_family(m);
          return {family_sum(m.a[0], m.l, m.U), family_sum(m.a[1], m.m, m.V), family_sum(m.a[2], m.n, m.W)};
        } else {
          validate_family(m.base);
          require_vars(m.f, {"x"}, "f");
          require_vars(m.g, {"x"}, "g");
          require_vars(m.h, {"x"}, "h");
          const auto& b = m.base;
          return {m.f.substitute("x", family_sum(b.a[0], b.l, b.U)),
                  m.g.substitute("x", family_sum(b.a[1], b.m, b.V)),
                  m.h.substitute("x", family_sum(b.a[2], b.n, b.W))};
        }
      },
      ms);
}

SurfacePencil::SurfacePencil(PencilSpec spec, std::size_t validation_samples)
    : spec_(std::move(spec)), curve_(spec_.curve), kind_(CurveKind::SpacelikeWithSpacelikeBinormal) {
  if (!(spec_.t_range.lo < spec_.t_range.hi)) throw SpecError("t_range must satisfy T1 < T2");
  if (!spec_.t_range.contains(spec_.t0)) throw SpecError("t0 must lie within t_range");
  if (!std::isfinite(spec_.theta0)) throw SpecError("theta0 must be finite");
  require_vars(spec_.lambda, {"s"}, "lambda");

  kind_ = classify_curve(curve_, std::max<std::size_t>(validation_samples, 2));
  if (spec_.kind && *spec_.kind != kind_) {
    throw SpecError(std::string("declared curve kind '") + std::string(to_string(*spec_.kind)) +
                    "' does not match the curve ('" + std::string(to_string(kind_)) + "')");
  }
  spec_.kind = kind_;

  for (double s : curve_.s_range().uniform(std::max<std::size_t>(validation_samples, 2))) {
    if (!(std::abs(lambda(s)) > 1e-9)) {
      std::ostringstream os;
      os << "lambda(s) vanishes at s=" << s;
      throw SpecError(os.str());
    }
  }

  uvw_ = resolve_marching_scale(spec_.marching);
  for (std::size_t i = 0; i < 3; ++i) {
    d_s_[i] = uvw_[i].derivative("s");
    d_t_[i] = uvw_[i].derivative("t");
  }
}

double SurfacePencil::lambda(double s) const { return spec_.lambda.evaluate(Bindings{{"s", s}}); }

ScaleValues SurfacePencil::scale(double s, double t) const {
  const Bindings b{{"s", s}, {"t", t}};
  ScaleValues out;
  out.u = uvw_[0].evaluate(b);
  out.v = uvw_[1].evaluate(b);
  out.w = uvw_[2].evaluate(b);
  out.u_s = d_s_[0].evaluate(b);
  out.v_s = d_s_[1].evaluate(b);
  out.w_s = d_s_[2].evaluate(b);
  out.u_t = d_t_[0].evaluate(b);
  out.v_t = d_t_[1].evaluate(b);
  out.w_t = d_t_[2].evaluate(b);
  return out;
}

namespace {

double theta_sign(CurveKind kind) { return kind == CurveKind::Timelike ? 1.0 : -1.0; }

double torsion_integral(const SurfacePencil& pencil, double a, double b) {
  return integrate_simpson([&](double s) { return pencil.frame(s).torsion; }, a, b, 1e-10);
}

}  // namespace

double theta_at(const SurfacePencil& pencil, double s) {
  return pencil.spec().theta0 + theta_sign(pencil.kind()) * torsion_integral(pencil, 0.0, s);
}

std::vector<double> theta_profile(const SurfacePencil& pencil, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  if (grid.empty()) return out;
  const double sign = theta_sign(pencil.kind());
  double theta = theta_at(pencil, grid[0]);
  out.push_back(theta);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    theta += sign * torsion_integral(pencil, grid[i - 1], grid[i]);
    out.push_back(theta);
  }
  return out;
}

Vector3 reference_normal(const FrenetFrame& frame, double theta) {
  if (frame.kind == CurveKind::Timelike) return std::cos(theta) * frame.N + std::sin(theta) * frame.B;
  return std::cosh(theta) * frame.N + std::sinh(theta) * frame.B;
}

Vector3 evaluate_surface(const SurfacePencil& pencil, double s, double t) {
  return point_on(pencil, pencil.frame(s), pencil.curve().position(s), t);
}

std::vector<std::size_t> SurfaceMesh::curve_row() const {
  std::vector<std::size_t> out(ns);
  for (std::size_t i = 0; i < ns; ++i) out[i] = i * nt + curve_column;
  return out;
}

SurfaceMesh make_lattice(const SurfacePencil& pencil, std::size_t ns, std::size_t nt) {
  if (ns < 2 || nt < 2) throw std::invalid_argument("surface grids need ns >= 2 and nt >= 2");
  SurfaceMesh mesh;
  mesh.ns = ns;
  mesh.nt = nt;
  mesh.s_values = pencil.curve().s_range().uniform(ns);
  mesh.t_values = pencil.spec().t_range.uniform(nt);
  const double t0 = pencil.spec().t0;
  std::size_t nearest = 0;
  for (std::size_t j = 1; j < nt; ++j) {
    if (std::abs(mesh.t_values[j] - t0) < std::abs(mesh.t_values[nearest] - t0)) nearest = j;
  }
  mesh.t_values[nearest] = t0;
  mesh.curve_column = nearest;
  return mesh;
}

SurfaceMesh sample_grid(const SurfacePencil& pencil, std::size_t ns, std::size_t nt, Execution exec) {
  SurfaceMesh mesh = make_lattice(pencil, ns, nt);
  mesh.vertices.resize(ns * nt);

  auto fill_row = [&](std::size_t i) {
    const double s = mesh.s_values[i];
    const FrenetFrame f = pencil.frame(s);
    const Vector3 r = pencil.curve().position(s);
    for (std::size_t j = 0; j < nt; ++j) {
      const Vector3 p = point_on(pencil, f, r, mesh.t_values[j]);
      if (!p.is_finite()) throw Error("non-finite surface point at " + describe(s, mesh.t_values[j]));
      mesh.vertices[i * nt + j] = p;
    }
  };

  const std::size_t workers =
      exec == Execution::Parallel ? std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, ns) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < ns; ++i) fill_row(i);
    return mesh;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < ns; i += workers) fill_row(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return mesh;
}

const ConditionRecord* ConditionReport::find(const std::string& name) const {
  for (const auto& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

ConditionReport check_family_conditions(const SurfacePencil& pencil, std::size_t n_s, double threshold) {
  const auto& ms = pencil.spec().marching;
  if (std::holds_alternative<DirectScale>(ms)) {
    throw SpecError("family conditions apply only to polynomial or composed marching scales");
  }
  const bool composed = std::holds_alternative<ComposedFamily>(ms);
  const PolynomialFamily& fam = composed ? std::get<ComposedFamily>(ms).base : std::get<PolynomialFamily>(ms);

  const double t0 = pencil.spec().t0;
  const Bindings at_t0{{"t", t0}};
  const Bindings at_zero{{"x", 0.0}};

  double vanishing = std::max({std::abs(fam.U.evaluate(at_t0)), std::abs(fam.V.evaluate(at_t0)),
                               std::abs(fam.W.evaluate(at_t0))});
  double g_prime = 1.0;
  double h_prime = 1.0;
  if (composed) {
    const auto& c = std::get<ComposedFamily>(ms);
    vanishing = std::max({vanishing, std::abs(c.f.evaluate(at_zero)), std::abs(c.g.evaluate(at_zero)),
                          std::abs(c.h.evaluate(at_zero))});
    g_prime = c.g.derivative("x").evaluate(at_zero);
    h_prime = c.h.derivative("x").evaluate(at_zero);
  }
  const double dV = fam.V.derivative("t").evaluate(at_t0);
  const double dW = fam.W.derivative("t").evaluate(at_t0);
  const double a21 = fam.a[1][0];
  const double a31 = fam.a[2][0];

  const auto grid = pencil.curve().s_range().uniform(std::max<std::size_t>(n_s, 2));
  const auto theta = theta_profile(pencil, grid);

  double theta_gap = 0.0;
  double coupling_v = 0.0;
  double coupling_w = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    theta_gap = std::max(theta_gap, std::abs(theta[i] - theta_at(pencil, s)));
    const Bindings bs{{"s", s}};
    const double lam = pencil.lambda(s);
    const double lhs_v = g_prime * a21 * fam.m.evaluate(bs) * dV;
    const double lhs_w = h_prime * a31 * fam.n.evaluate(bs) * dW;
    double rhs_v = 0.0;
    double rhs_w = 0.0;
    switch (pencil.kind()) {
      case CurveKind::SpacelikeWithSpacelikeBinormal:
        rhs_v = lam * std::sinh(theta[i]);
        rhs_w = lam * std::cosh(theta[i]);
        break;
      case CurveKind::SpacelikeWithTimelikeBinormal:
        rhs_v = -lam * std::sinh(theta[i]);
        rhs_w = -lam * std::cosh(theta[i]);
        break;
      case CurveKind::Timelike:
        rhs_v = lam * std::sin(theta[i]);
        rhs_w = -lam * std::cos(theta[i]);
        break;
    }
    coupling_v = std::max(coupling_v, std::abs(lhs_v - rhs_v));
    coupling_w = std::max(coupling_w, std::abs(lhs_w - rhs_w));
  }

  ConditionReport report;
  report.kind = pencil.kind();
  auto add = [&](std::string name, double residual) {
    report.records.push_back({std::move(name), residual, threshold, residual <= threshold});
  };
  add("vanishing_at_t0", vanishing);
  add("theta_consistency", theta_gap);
  add("coupling_v", coupling_v);
  add("coupling_w", coupling_w);
  report.pass = std::all_of(report.records.begin(), report.records.end(), [](const auto& r) { return r.pass; });
  return report;
}

}  // namespace lpencil
