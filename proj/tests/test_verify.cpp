#include <doctest.h>

#include <cmath>
#include <random>

#include "lpencil/errors.hpp"
#include "lpencil/fixtures.hpp"
#include "lpencil/verify.hpp"
#include "random_specs.hpp"
#include "support.hpp"

using namespace lpencil;
using namespace lpencil::test;

namespace {

SurfacePencil fixture_pencil(const std::string& name) {
  const Config cfg = example_config(name);
  return SurfacePencil(cfg.spec, cfg.ns);
}

const CheckRecord& record(const VerificationReport& r, const std::string& name) {
  const CheckRecord* c = r.find(name);
  REQUIRE(c != nullptr);
  return *c;
}

const char* kind_label(CurveKind k) {
  switch (k) {
    case CurveKind::SpacelikeWithSpacelikeBinormal: return "spacelike binormal";
    case CurveKind::SpacelikeWithTimelikeBinormal: return "timelike binormal";
    case CurveKind::Timelike: return "timelike curve";
  }
  return "";
}

constexpr CurveKind kKinds[] = {CurveKind::SpacelikeWithSpacelikeBinormal, CurveKind::SpacelikeWithTimelikeBinormal,
                                CurveKind::Timelike};

}  // namespace

TEST_CASE("tolerances") {
  Tolerances t = Tolerances::uniform(1e-3);
  CHECK(t.unit_speed == 1e-3);
  CHECK(t.rodrigues == 1e-3);
  CHECK(t.family == 1e-3);
  CHECK(t.omega_warn == Tolerances{}.omega_warn);
  CHECK(t.set("frame_ok", 2.0));
  CHECK(t.frame == 2.0);
  CHECK(t.set("phi1_zero", 3.0));
  CHECK(t.phi1 == 3.0);
  CHECK_FALSE(t.set("nonsense", 1.0));
}

TEST_CASE("examples reach their expected verdicts") {
  for (const auto& name : example_names()) {
    INFO(name);
    const ExampleResult r = run_example(name);
    CHECK(r.report.overall == example_expected_pass(name));
    CHECK(r.report.checks.size() == check_names().size());
    for (std::size_t i = 0; i < check_names().size(); ++i) CHECK(r.report.checks[i].name == check_names()[i]);
  }
  const ExampleResult p5 = run_example("P5");
  CHECK_FALSE(record(p5.report, "isoparametric").pass);
  CHECK(record(p5.report, "isoparametric").residual == doctest::Approx(1.0));
}

TEST_CASE("residuals on the sinh-curve example") {
  const SurfacePencil p = fixture_pencil("P1");
  CHECK(isoparametric_residual(p, 101) <= 1e-12);
  CHECK(parallelism_residual(p, 101) <= 1e-9);
  CHECK(rodrigues_residual(p, 101) <= 1e-6);
  for (double s : p.curve().s_range().uniform(21)) CHECK(std::abs(phi_decompose(p, s).phi1) <= 1e-12);
}

TEST_CASE("a normal that is not parallel to the reference normal") {
  // n is along N + B, which is null; n1 = N.
  const SurfacePencil flat(direct(circle(), "0", "t", "t"));
  CHECK(parallelism_residual(flat, 101) > 0.1);
  CHECK_FALSE(verify_all(flat.spec()).overall);

  // n follows cosh(s) N + sinh(s) B while theta stays 0.
  const SurfacePencil twist(direct(circle(), "0", "t*sinh(s)", "t*cosh(s)"));
  CHECK(parallelism_residual(twist, 101) > 1e-2);
  const VerificationReport r = verify_all(twist.spec());
  CHECK_FALSE(r.overall);
  CHECK_FALSE(record(r, "parallelism").pass);
  CHECK_FALSE(record(r, "rodrigues").pass);
  CHECK(record(r, "isoparametric").pass);
}

TEST_CASE("finite differences are converged") {
  SUBCASE("Rodrigues step halving") {
    const SurfacePencil twist(direct(circle(), "0", "t*sinh(s)", "t*cosh(s)"));
    const double a = rodrigues_residual(twist, 101, 1e-5), b = rodrigues_residual(twist, 101, 5e-6);
    CHECK(a > 0);
    CHECK(a / b < 5);
    CHECK(b / a < 5);
    for (const char* name : {"P1", "P2", "P3", "P4", "P5c", "P6"}) {
      INFO(std::string(name));
      const SurfacePencil p = fixture_pencil(name);
      const std::size_t ns = example_config(name).ns;
      CHECK(rodrigues_residual(p, ns, 1e-5) <= 1e-5);
      CHECK(rodrigues_residual(p, ns, 5e-6) <= 1e-5);
    }
  }
  SUBCASE("symbolic partials against central differences") {
    std::mt19937_64 rng(21);
    for (const char* name : {"P1", "P2", "P3", "P4", "P5", "P6"}) {
      INFO(std::string(name));
      const SurfacePencil p = fixture_pencil(name);
      const Range sr = p.curve().s_range(), tr = p.spec().t_range;
      std::uniform_real_distribution<double> ds(sr.lo + 0.01, sr.hi - 0.01), dt(tr.lo + 0.01, tr.hi - 0.01);
      for (int i = 0; i < 50; ++i) {
        const double s = ds(rng), t = dt(rng);
        const Partials a = surface_partials(p, s, t), b = surface_partials_fd(p, s, t);
        // Boosted frames lose digits in proportion to their squared size.
        const double n = euclidean_norm(p.frame(s).N), scale = 1e-7 * n * n;
        CHECK(dist(a.ds, b.ds) <= scale * (1 + euclidean_norm(a.ds)));
        CHECK(dist(a.dt, b.dt) <= scale * (1 + euclidean_norm(a.dt)));
      }
    }
  }
}

TEST_CASE("closed-form phi components match the cross-product normal") {
  for (const char* name : {"P1", "P2", "P3", "P4", "P5c", "P6"}) {
    INFO(std::string(name));
    const SurfacePencil p = fixture_pencil(name);
    for (double s : p.curve().s_range().uniform(40)) {
      const Vector3 n = surface_normal(p, s, p.spec().t0);
      const Vector3 m = phi_decompose(p, s).combine(p.frame(s));
      CHECK(dist(n, m) <= 1e-8 * (1 + euclidean_norm(n)));
    }
  }
}

TEST_CASE("shifting theta0 breaks parallelism") {
  Config cfg = example_config("P1");
  cfg.spec.theta0 += 0.3;
  const VerificationReport r = verify_all(cfg.spec, cfg.verify_options());
  CHECK_FALSE(r.overall);
  CHECK(record(r, "isoparametric").pass);
  CHECK_FALSE(record(r, "parallelism").pass);
  REQUIRE(r.conditions.has_value());
  CHECK_FALSE(r.conditions->pass);
}

TEST_CASE("scaling lambda with the coupling coefficients keeps the verdict") {
  for (double k : {0.25, 3.0, -2.0}) {
    Config cfg = example_config("P1");
    auto& fam = std::get<PolynomialFamily>(cfg.spec.marching);
    fam.m = ex(num(k) + "*(" + fam.m.to_string() + ")");
    fam.n = ex(num(k) + "*(" + fam.n.to_string() + ")");
    cfg.spec.lambda = parse(num(k), {"s"});
    const VerificationReport r = verify_all(cfg.spec, cfg.verify_options());
    INFO(k);
    CHECK(r.overall);
    CHECK(r.conditions->pass);
  }
}

TEST_CASE("w = cosh(st) - 1 is on the curve but degenerate") {
  Config cfg = example_config("P5");
  std::get<ComposedFamily>(cfg.spec.marching).h = ex("cosh(x) - 1");
  const SurfacePencil p(cfg.spec, cfg.ns);
  CHECK(isoparametric_residual(p, 101) <= 1e-12);
  CHECK_THROWS_AS(surface_normal(p, 1.0, 0.0), DegenerateNormalError);
  const VerificationReport r = verify_all(cfg.spec, cfg.verify_options());
  CHECK(record(r, "isoparametric").pass);
  CHECK_FALSE(record(r, "parallelism").pass);
  CHECK(std::isinf(record(r, "parallelism").residual));
  CHECK_FALSE(r.overall);
}

TEST_CASE("surface causal type") {
  for (const auto& name : example_names()) {
    if (name == "P5") continue;
    INFO(name);
    const ExampleResult r = run_example(name);
    const SurfacePencil p(r.config.spec, r.config.ns);
    const CausalReport c = surface_causal_check(p, r.mesh);
    CHECK(c.nodes == r.mesh.vertices.size());
    CHECK(c.curve_nodes == r.mesh.ns);
    CHECK(c.curve_pass());
    CHECK(c.required ==
          (p.surface_type() == SurfaceType::Spacelike ? CausalClass::Timelike : CausalClass::Spacelike));
  }
}

TEST_CASE("verify_all reports instead of throwing") {
  // lambda vanishes inside the range.
  const VerificationReport r = verify_all(direct(circle(-1, 1), "0", "t", "t", "s"));
  CHECK_FALSE(r.overall);
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    CHECK_FALSE(c.detail.empty());
  }
  CHECK_FALSE(r.failing().empty());
  // Not unit speed.
  const VerificationReport q = verify_all(direct(curve("2*cos(s)", "2*sin(s)", "0", 0.1, 3), "0", "t", "t"));
  CHECK_FALSE(record(q, "unit_speed").pass);
  CHECK(record(q, "unit_speed").residual == doctest::Approx(3.0));
}

TEST_CASE("coupled random pencils verify") {
  std::mt19937_64 rng(20261019);
  for (CurveKind kind : kKinds) {
    for (bool composed : {false, true}) {
      for (int i = 0; i < 5; ++i) {
        const PencilSpec spec = random_pencil(kind, rng, Perturbation::None, composed);
        INFO(kind_label(kind), composed ? " composed #" : " polynomial #", i);
        INFO(spec.curve.x.to_string(), " | ", spec.curve.y.to_string(), " | ", spec.curve.z.to_string());
        const VerificationReport r = verify_all(spec);
        for (const auto& c : r.checks) {
          INFO(c.name, " ", c.residual, " ", c.detail);
          CHECK(c.pass);
        }
        REQUIRE(r.kind.has_value());
        CHECK(*r.kind == kind);
        REQUIRE(r.conditions.has_value());
        CHECK(r.conditions->pass);
      }
    }
  }
}

TEST_CASE("perturbed random pencils fail") {
  std::mt19937_64 rng(77);
  for (CurveKind kind : kKinds) {
    for (int i = 0; i < 5; ++i) {
      INFO(kind_label(kind), " #", i);
      const bool composed = i % 2 == 1;
      {
        const VerificationReport r = verify_all(random_pencil(kind, rng, Perturbation::DoubleA21, composed));
        CHECK_FALSE(r.overall);
        CHECK(record(r, "isoparametric").pass);
        CHECK_FALSE(record(r, "parallelism").pass);
        CHECK_FALSE(r.conditions->find("coupling_v")->pass);
      }
      {
        const VerificationReport r = verify_all(random_pencil(kind, rng, Perturbation::ShiftU, composed));
        CHECK_FALSE(r.overall);
        CHECK_FALSE(record(r, "isoparametric").pass);
        CHECK_FALSE(r.conditions->find("vanishing_at_t0")->pass);
      }
      {
        const VerificationReport r = verify_all(random_pencil(kind, rng, Perturbation::ShiftTheta0, composed));
        CHECK_FALSE(r.overall);
        CHECK_FALSE(record(r, "parallelism").pass);
      }
    }
  }
}
