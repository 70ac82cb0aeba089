#include "lpencil/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "lpencil/errors.hpp"

namespace lpencil {

Tolerances Tolerances::uniform(double value) {
  Tolerances t;
  t.unit_speed = t.frame = t.isoparametric = t.phi1 = t.parallelism = t.rodrigues = t.family = value;
  return t;
}

bool Tolerances::set(const std::string& name, double value) {
  if (name == "unit_speed") unit_speed = value;
  else if (name == "frame_ok" || name == "frame") frame = value;
  else if (name == "isoparametric") isoparametric = value;
  else if (name == "phi1_zero" || name == "phi1") phi1 = value;
  else if (name == "parallelism") parallelism = value;
  else if (name == "rodrigues") rodrigues = value;
  else if (name == "family") family = value;
  else if (name == "omega_warn") omega_warn = value;
  else return false;
  return true;
}

namespace {

Vector3 n_prime(const FrenetFrame& f) {
  if (f.kind == CurveKind::Timelike) return f.curvature * f.T - f.torsion * f.B;
  return (f.epsilon * f.curvature) * f.T + f.torsion * f.B;
}

std::string at(double s, double t) {
  std::ostringstream os;
  os.precision(9);
  os << " at (s=" << s << ", t=" << t << ")";
  return os.str();
}

Vector3 checked_cross(const Partials& p, double s, double t) {
  const Vector3 n = lorentz_cross(p.ds, p.dt);
  if (!(euclidean_norm(n) >= kMinNormalNorm)) {
    throw DegenerateNormalError("degenerate tangent plane, |dP/ds x dP/dt| < 1e-10" + at(s, t));
  }
  return n;
}

std::vector<double> s_grid(const SurfacePencil& pencil, std::size_t n_s) {
  if (n_s < 2) throw std::invalid_argument("verification grids need n_s >= 2");
  return pencil.curve().s_range().uniform(n_s);
}

}  // namespace

Partials surface_partials(const SurfacePencil& pencil, double s, double t) {
  const FrenetFrame f = pencil.frame(s);
  const ScaleValues k = pencil.scale(s, t);
  const Vector3 dT = f.curvature * f.N;
  const Vector3 dN = n_prime(f);
  const Vector3 dB = f.torsion * f.N;
  Partials p;
  p.ds = f.T + k.u_s * f.T + k.u * dT + k.v_s * f.N + k.v * dN + k.w_s * f.B + k.w * dB;
  p.dt = k.u_t * f.T + k.v_t * f.N + k.w_t * f.B;
  return p;
}

Partials surface_partials_fd(const SurfacePencil& pencil, double s, double t) {
  const double hs = 1e-6 * pencil.curve().s_range().width();
  const double ht = 1e-6 * pencil.spec().t_range.width();
  Partials p;
  p.ds = (evaluate_surface(pencil, s + hs, t) - evaluate_surface(pencil, s - hs, t)) / (2.0 * hs);
  p.dt = (evaluate_surface(pencil, s, t + ht) - evaluate_surface(pencil, s, t - ht)) / (2.0 * ht);
  return p;
}

Vector3 surface_normal(const SurfacePencil& pencil, double s, double t) {
  return checked_cross(surface_partials(pencil, s, t), s, t);
}

Vector3 surface_normal_fd(const SurfacePencil& pencil, double s, double t) {
  return checked_cross(surface_partials_fd(pencil, s, t), s, t);
}

PhiTriple phi_decompose(const SurfacePencil& pencil, double s) {
  const ScaleValues k = pencil.scale(s, pencil.spec().t0);
  const double a = 1.0 + k.u_s;
  const double p2 = a * k.w_t - k.w_s * k.u_t;
  const double p3 = a * k.v_t - k.v_s * k.u_t;
  PhiTriple phi;
  phi.phi1 = k.v_s * k.w_t - k.w_s * k.v_t;
  switch (pencil.kind()) {
    case CurveKind::SpacelikeWithSpacelikeBinormal:
      phi.phi2 = p2;
      phi.phi3 = p3;
      break;
    case CurveKind::SpacelikeWithTimelikeBinormal:
      phi.phi2 = -p2;
      phi.phi3 = -p3;
      break;
    case CurveKind::Timelike:
      phi.phi2 = p2;
      phi.phi3 = -p3;
      break;
  }
  return phi;
}

double isoparametric_residual(const SurfacePencil& pencil, std::size_t n_s) {
  const double t0 = pencil.spec().t0;
  double worst = 0.0;
  for (double s : s_grid(pencil, n_s)) {
    worst = std::max(worst, euclidean_norm(evaluate_surface(pencil, s, t0) - pencil.curve().position(s)));
  }
  return worst;
}

ParallelismResult parallelism_check(const SurfacePencil& pencil, std::size_t n_s) {
  const auto grid = s_grid(pencil, n_s);
  const auto theta = theta_profile(pencil, grid);
  const double t0 = pencil.spec().t0;
  ParallelismResult out;
  double previous = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vector3 n = surface_normal(pencil, grid[i], t0);
    const Vector3 ne = n / euclidean_norm(n);
    const Vector3 n1 = reference_normal(pencil.frame(grid[i]), theta[i]);
    const double k = inner(ne, n1) / inner(n1, n1);
    out.residual = std::max(out.residual, euclidean_norm(ne - k * n1));
    out.min_abs_lambda = std::min(out.min_abs_lambda, std::abs(k));
    if (i > 0 && k * previous < 0.0) ++out.lambda_sign_changes;
    previous = k;
  }
  return out;
}

double parallelism_residual(const SurfacePencil& pencil, std::size_t n_s) {
  return parallelism_check(pencil, n_s).residual;
}

namespace {

// The Rodrigues residual projects onto directions whose Euclidean length can
// be thousands of times their Lorentzian length, which amplifies rounding
// noise in the differenced normal by the square of that ratio. The normal is
// therefore rebuilt here in extended precision from the same expressions.
WideVec wide_normal(const SurfacePencil& pencil, WideReal s, double t) {
  const WideFrame f = extended_frame_at(pencil.curve(), s);
  const WideBindings b{{"s", s}, {"t", static_cast<WideReal>(t)}};
  const WideReal u = pencil.u().evaluate(b), v = pencil.v().evaluate(b), w = pencil.w().evaluate(b);
  const WideVec ds = weval(pencil.scale_ds(), b);
  const WideVec dt = weval(pencil.scale_dt(), b);
  WideVec dN;
  if (pencil.kind() == CurveKind::Timelike) {
    dN = f.curvature * f.T - f.torsion * f.B;
  } else {
    const WideReal eps = pencil.kind() == CurveKind::SpacelikeWithTimelikeBinormal ? -1 : 1;
    dN = (eps * f.curvature) * f.T + f.torsion * f.B;
  }
  const WideVec Ps = f.T + ds.x1 * f.T + (u * f.curvature) * f.N + ds.x2 * f.N + v * dN + ds.x3 * f.B +
                     (w * f.torsion) * f.N;
  const WideVec Pt = dt.x1 * f.T + dt.x2 * f.N + dt.x3 * f.B;
  const WideVec n = wcross(Ps, Pt);
  if (!(weuclid(n) >= kMinNormalNorm)) {
    throw DegenerateNormalError("degenerate tangent plane, |dP/ds x dP/dt| < 1e-10" +
                                at(static_cast<double>(s), t));
  }
  return n;
}

}  // namespace

RodriguesResult rodrigues_check(const SurfacePencil& pencil, std::size_t n_s, double h) {
  const double t0 = pencil.spec().t0;
  RodriguesResult out;
  auto unit_normal = [&](WideReal s) {
    const WideVec n = wide_normal(pencil, s, t0);
    const WideReal q = winner(n, n);
    const WideReal e2 = n.x1 * n.x1 + n.x2 * n.x2 + n.x3 * n.x3;
    if (wabs(q) <= static_cast<WideReal>(1e-10) * (e2 > 1 ? e2 : 1)) {
      out.euclidean_fallback = true;
      return (1 / wsqrt(e2)) * n;
    }
    return (1 / wsqrt(wabs(q))) * n;
  };
  const WideReal wh = h;
  for (double s : s_grid(pencil, n_s)) {
    const WideReal ws = s;
    const WideVec dn = (1 / (2 * wh)) * (unit_normal(ws + wh) - unit_normal(ws - wh));
    const WideVec T = extended_frame_at(pencil.curve(), ws).T;
    const WideReal omega = winner(dn, T) / winner(T, T);
    out.residual = std::max(out.residual, static_cast<double>(weuclid(dn - omega * T)));
    out.min_abs_omega = std::min(out.min_abs_omega, static_cast<double>(wabs(omega)));
  }
  return out;
}

double rodrigues_residual(const SurfacePencil& pencil, std::size_t n_s, double h) {
  return rodrigues_check(pencil, n_s, h).residual;
}

CausalReport surface_causal_check(const SurfacePencil& pencil, const SurfaceMesh& mesh) {
  CausalReport rep;
  rep.required = pencil.surface_type() == SurfaceType::Spacelike ? CausalClass::Timelike : CausalClass::Spacelike;
  for (std::size_t i = 0; i < mesh.s_values.size(); ++i) {
    for (std::size_t j = 0; j < mesh.t_values.size(); ++j) {
      const bool on_curve = j == mesh.curve_column;
      ++rep.nodes;
      if (on_curve) ++rep.curve_nodes;
      Vector3 n;
      try {
        n = surface_normal(pencil, mesh.s_values[i], mesh.t_values[j]);
      } catch (const DegenerateNormalError&) {
        ++rep.degenerate_nodes;
        continue;
      }
      const Vector3 ne = n / euclidean_norm(n);
      const CausalClass c = causal_class(ne);
      if (c == rep.required) {
        ++rep.conforming;
        if (on_curve) ++rep.curve_conforming;
        continue;
      }
      if (c == CausalClass::Null) ++rep.null_nodes;
      rep.worst_violation = std::max(rep.worst_violation, std::abs(inner(ne, ne)));
    }
  }
  return rep;
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> VerificationReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"unit_speed", "frame_ok",    "isoparametric", "phi1_zero",
                                              "parallelism", "rodrigues", "surface_type"};
  return names;
}

namespace {

double frame_residual(const FrenetFrame& f) {
  const double r[] = {
      std::abs(std::abs(inner(f.T, f.T)) - 1.0), std::abs(std::abs(inner(f.N, f.N)) - 1.0),
      std::abs(std::abs(inner(f.B, f.B)) - 1.0), std::abs(inner(f.T, f.N)),
      std::abs(inner(f.T, f.B)),                 std::abs(inner(f.N, f.B)),
  };
  return *std::max_element(std::begin(r), std::end(r));
}

std::string format(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace

VerificationReport verify_all(const PencilSpec& spec, const VerifyOptions& options) {
  VerificationReport report;
  const Tolerances& tol = options.tol;

  std::optional<SurfacePencil> pencil;
  std::string pencil_error;
  try {
    pencil.emplace(spec, options.n_s);
    report.kind = pencil->kind();
  } catch (const std::exception& e) {
    pencil_error = e.what();
  }

  auto run = [&](const std::string& name, double threshold, bool needs_pencil, auto&& body) {
    CheckRecord rec;
    rec.name = name;
    rec.threshold = threshold;
    if (needs_pencil && !pencil) {
      rec.detail = pencil_error;
    } else {
      try {
        const double r = body(rec);
        rec.residual = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
        rec.pass = rec.residual <= threshold;
      } catch (const std::exception& e) {
        rec.detail = e.what();
      }
    }
    report.checks.push_back(std::move(rec));
  };

  run("unit_speed", tol.unit_speed, false, [&](CheckRecord&) {
    return check_unit_speed(Curve(spec.curve), std::max<std::size_t>(options.n_s, 2));
  });

  run("frame_ok", tol.frame, true, [&](CheckRecord&) {
    double worst = 0.0;
    for (double s : s_grid(*pencil, options.n_s)) worst = std::max(worst, frame_residual(pencil->frame(s)));
    return worst;
  });

  run("isoparametric", tol.isoparametric, true,
      [&](CheckRecord&) { return isoparametric_residual(*pencil, options.n_s); });

  run("phi1_zero", tol.phi1, true, [&](CheckRecord&) {
    double worst = 0.0;
    double mismatch = 0.0;
    for (double s : s_grid(*pencil, options.n_s)) {
      const PhiTriple phi = phi_decompose(*pencil, s);
      worst = std::max(worst, std::abs(phi.phi1));
      try {
        const Vector3 n = surface_normal(*pencil, s, spec.t0);
        mismatch = std::max(mismatch, euclidean_norm(phi.combine(pencil->frame(s)) - n));
      } catch (const DegenerateNormalError&) {
      }
    }
    if (mismatch > 1e-8) {
      report.warnings.push_back("closed-form phi components differ from the cross-product normal by " +
                                format(mismatch));
    }
    return worst;
  });

  run("parallelism", tol.parallelism, true, [&](CheckRecord& rec) {
    const ParallelismResult p = parallelism_check(*pencil, options.n_s);
    rec.detail = "min |lambda| = " + format(p.min_abs_lambda);
    if (p.lambda_sign_changes > 0) {
      report.warnings.push_back("implied lambda changes sign " + std::to_string(p.lambda_sign_changes) +
                                " time(s) along the curve");
    }
    return p.residual;
  });

  run("rodrigues", tol.rodrigues, true, [&](CheckRecord& rec) {
    const RodriguesResult r = rodrigues_check(*pencil, options.n_s, options.fd_step);
    rec.detail = "min |omega| = " + format(r.min_abs_omega);
    if (r.euclidean_fallback) report.normalization = "euclidean (null normal encountered)";
    if (r.min_abs_omega < tol.omega_warn) {
      report.warnings.push_back("min |omega| = " + format(r.min_abs_omega) + " is below " +
                                format(tol.omega_warn));
    }
    return r.residual;
  });

  run("surface_type", 0.0, true, [&](CheckRecord& rec) {
    const SurfaceMesh lattice = make_lattice(*pencil, options.n_s, options.n_t);
    const CausalReport c = surface_causal_check(*pencil, lattice);
    std::ostringstream os;
    os << "required " << to_string(c.required) << " normal; " << c.curve_conforming << "/" << c.curve_nodes
       << " on the curve, " << format(100.0 * c.fraction()) << "% of the lattice";
    rec.detail = os.str();
    if (c.curve_pass() && c.conforming < c.nodes) {
      report.warnings.push_back("surface loses its causal type at " + std::to_string(c.nodes - c.conforming) +
                                " off-curve lattice node(s)");
    }
    return static_cast<double>(c.curve_nodes - c.curve_conforming) /
           static_cast<double>(std::max<std::size_t>(c.curve_nodes, 1));
  });

  if (pencil && !std::holds_alternative<DirectScale>(spec.marching)) {
    try {
      report.conditions = check_family_conditions(*pencil, options.n_s, tol.family);
      if (!report.conditions->pass) report.warnings.push_back("family coupling conditions are not met");
    } catch (const std::exception& e) {
      report.warnings.push_back(std::string("family conditions not evaluated: ") + e.what());
    }
  }

  report.overall = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.pass; });
  return report;
}

}  // namespace lpencil
