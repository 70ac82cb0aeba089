// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lpencil/cli.hpp"
#include "lpencil/fixtures.hpp"
#include "lpencil/frenet.hpp"
#include "lpencil/minkowski.hpp"
#include "lpencil/pencil.hpp"
#include "lpencil/verify.hpp"
#include "random_specs.hpp"
#include "random_trees.hpp"
#include "support.hpp"

using namespace lpencil;
using namespace lpencil::test;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// ---- 1: frames against closed forms -------------------------------------

struct FrameCase {
  const char* name;
  CurveSpec curve;
  CurveKind kind;
  std::function<FrenetFrame(double)> exact;
};

Outcome frame_fidelity() {
  const double c = std::sqrt(2.0), r3 = std::sqrt(3.0);
  std::vector<FrameCase> cases;
  cases.push_back({"sinh curve (a = b = 1)", sinh_curve(), CurveKind::SpacelikeWithSpacelikeBinormal, [=](double s) {
                     FrenetFrame f;
                     f.T = {std::cosh(s / c) / c, 1 / c, std::sinh(s / c) / c};
                     f.N = {std::sinh(s / c), 0, std::cosh(s / c)};
                     f.B = {std::cosh(s / c) / c, -1 / c, std::sinh(s / c) / c};
                     f.curvature = 0.5;
                     f.torsion = 0.5;
                     return f;
                   }});
  cases.push_back({"sinh curve (tau = 1/2)", sinh_curve_half(), CurveKind::SpacelikeWithSpacelikeBinormal,
                   [=](double s) {
                     FrenetFrame f;
                     f.T = {r3 / 2 * std::cosh(s), 0.5, r3 / 2 * std::sinh(s)};
                     f.N = {std::sinh(s), 0, std::cosh(s)};
                     f.B = {0.5 * std::cosh(s), -r3 / 2, 0.5 * std::sinh(s)};
                     f.curvature = r3 / 2;
                     f.torsion = 0.5;
                     return f;
                   }});
  cases.push_back({"circle", circle(0, 2 * kPi), CurveKind::SpacelikeWithTimelikeBinormal, [](double s) {
                     FrenetFrame f;
                     f.T = {-std::sin(s), std::cos(s), 0};
                     f.N = {-std::cos(s), -std::sin(s), 0};
                     f.B = {0, 0, 1};
                     f.curvature = 1;
                     f.torsion = 0;
                     return f;
                   }});
  cases.push_back({"hyperbola", hyperbola(0, 2 * kPi), CurveKind::Timelike, [](double s) {
                     FrenetFrame f;
                     f.T = {std::sinh(s), 0, std::cosh(s)};
                     f.N = {std::cosh(s), 0, std::sinh(s)};
                     f.B = {0, -1, 0};
                     f.curvature = 1;
                     f.torsion = 0;
                     return f;
                   }});

  Outcome o;
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (const auto& fc : cases) {
    const Curve k(fc.curve);
    if (classify_curve(k, 101) != fc.kind) {
      o.pass = false;
      o.notes.push_back(std::string(fc.name) + ": wrong curve kind");
      continue;
    }
    std::uniform_real_distribution<double> d(fc.curve.s_range.lo, fc.curve.s_range.hi);
    double err = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double s = d(rng);
      const FrenetFrame f = frame_at(k, fc.kind, s), e = fc.exact(s);
      err = std::max({err, euclidean_norm(f.T - e.T), euclidean_norm(f.N - e.N), euclidean_norm(f.B - e.B),
                      std::abs(f.curvature - e.curvature), std::abs(f.torsion - e.torsion)});
    }
    worst = std::max(worst, err);
    if (!(err <= 1e-9)) {
      o.pass = false;
      o.notes.push_back(std::string(fc.name) + ": max error " + sci(err));
    }
  }
  o.detail = "4 curves x 50 samples, max error " + sci(worst) + " (limit 1e-9)";
  return o;
}

// ---- 2: theta against closed forms ---------------------------------------

Outcome theta_reproduction() {
  Outcome o;
  double worst = 0.0;
  struct Case {
    CurveSpec curve;
    double slope;
  };
  std::vector<Case> cases;
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {2, 1}, {0.5, 1.5}}) {
    const double c = std::sqrt(a * a + b * b);
    cases.push_back({curve(num(a) + "*sinh(s/" + num(c) + ")", num(b / c) + "*s", num(a) + "*cosh(s/" + num(c) + ")",
                           -2, 2),
                     -b / (c * c)});
  }
  cases.push_back({sinh_curve_half(), -0.5});
  for (const auto& cs : cases) {
    const SurfacePencil p(direct(cs.curve, "0", "0", "t"));
    for (double s : cs.curve.s_range.uniform(201)) worst = std::max(worst, std::abs(theta_at(p, s) - cs.slope * s));
  }
  o.pass = worst <= 1e-9;
  o.detail = "4 curves x 201 nodes, max |theta - closed form| " + sci(worst) + " (limit 1e-9)";
  return o;
}

// ---- 3: fixtures ---------------------------------------------------------

Outcome fixture_verification() {
  Outcome o;
  const Tolerances defaults;
  std::string passed;
  for (const auto& name : example_names()) {
    const ExampleResult r = run_example(name, &defaults);
    if (name == "P5") {
      const CheckRecord* iso = r.report.find("isoparametric");
      const bool ok = !r.report.overall && iso && std::abs(iso->residual - 1.0) <= 1e-9;
      if (!ok) {
        o.pass = false;
        o.notes.push_back("P5: expected failure with isoparametric residual 1, got " +
                          (iso ? sci(iso->residual) : std::string("none")));
      }
      continue;
    }
    if (!r.report.overall) {
      o.pass = false;
      std::string failing;
      for (const auto& f : r.report.failing()) failing += " " + f;
      o.notes.push_back(name + " failed:" + failing);
    } else {
      passed += (passed.empty() ? "" : " ") + name;
    }
  }
  o.detail = "pass: " + passed + "; P5 fails on isoparametric";
  return o;
}

// ---- 4: sufficiency and necessity on random families ---------------------

Outcome random_families() {
  Outcome o;
  const CurveKind kinds[] = {CurveKind::SpacelikeWithSpacelikeBinormal, CurveKind::SpacelikeWithTimelikeBinormal,
                             CurveKind::Timelike};
  const Perturbation perturbations[] = {Perturbation::DoubleA21, Perturbation::ShiftU, Perturbation::ShiftTheta0};
  const char* pert_names[] = {"a21 x 2", "U(t0) + 0.1", "theta0 + 0.3"};
  std::mt19937_64 rng(20261019);
  int ok = 0, total = 0;
  int caught[3] = {0, 0, 0}, tried[3] = {0, 0, 0};
  for (CurveKind kind : kinds) {
    for (int i = 0; i < 50; ++i) {
      // Same seed for the clean spec and its perturbations.
      const std::uint64_t seed = rng();
      std::mt19937_64 r0(seed);
      const VerificationReport clean = verify_all(random_pencil(kind, r0));
      ++total;
      if (clean.overall) {
        ++ok;
      } else {
        std::string failing;
        for (const auto& f : clean.failing()) failing += " " + f;
        o.notes.push_back(std::string(to_string(kind)) + " #" + std::to_string(i) + " did not verify:" + failing);
      }
      for (int k = 0; k < 3; ++k) {
        std::mt19937_64 rk(seed);
        const VerificationReport r = verify_all(random_pencil(kind, rk, perturbations[k]));
        ++tried[k];
        if (!r.overall) {
          ++caught[k];
        } else {
          o.notes.push_back(std::string("escape: ") + pert_names[k] + " on " + std::string(to_string(kind)) + " #" +
                            std::to_string(i));
        }
      }
    }
  }
  o.pass = ok == total;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " coupled specs verify; perturbations caught";
  for (int k = 0; k < 3; ++k) {
    const double rate = static_cast<double>(caught[k]) / tried[k];
    o.detail += std::string(" ") + pert_names[k] + " " + std::to_string(caught[k]) + "/" + std::to_string(tried[k]);
    if (rate < 0.95) o.pass = false;
  }
  return o;
}

// ---- 5: kernel invariants ------------------------------------------------

Outcome kernel_invariants() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-3, 3), k(-2, 2);
  double cross = 0, bilinear = 0, structural = 0, deriv = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vector3 x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)}, z{d(rng), d(rng), d(rng)};
    const Vector3 c = lorentz_cross(x, y);
    cross = std::max({cross, std::abs(inner(c, x)), std::abs(inner(c, y))});
    const double a = k(rng), b = k(rng);
    bilinear = std::max(bilinear, std::abs(inner(a * x + b * y, z) - (a * inner(x, z) + b * inner(y, z))));
  }

  const CurveKind kinds[] = {CurveKind::SpacelikeWithSpacelikeBinormal, CurveKind::SpacelikeWithTimelikeBinormal,
                             CurveKind::Timelike};
  const double h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const CurveKind kind = kinds[i % 3];
    const CurveSpec spec = random_curve(kind, rng);
    const Curve cv(spec);
    std::uniform_real_distribution<double> ds(spec.s_range.lo + h, spec.s_range.hi - h);
    const double s = ds(rng);
    const FrenetFrame f = frame_at(cv, kind, s), fp = frame_at(cv, kind, s + h), fm = frame_at(cv, kind, s - h);
    const Vector3 dT = (fp.T - fm.T) / (2 * h), dN = (fp.N - fm.N) / (2 * h), dB = (fp.B - fm.B) / (2 * h);
    const Vector3 expect_dN = kind == CurveKind::Timelike ? f.curvature * f.T - f.torsion * f.B
                                                          : (f.epsilon * f.curvature) * f.T + f.torsion * f.B;
    structural = std::max({structural, euclidean_norm(dT - f.curvature * f.N), euclidean_norm(dN - expect_dN),
                           euclidean_norm(dB - f.torsion * f.N)});
  }

  std::uniform_real_distribution<double> pt(-1.5, 1.5);
  std::uniform_int_distribution<int> depth(1, 6);
  for (int i = 0; i < 1000; ++i) {
    const Expression e = random_tree(rng, depth(rng));
    const double s = pt(rng), t = pt(rng), step = 1e-6;
    const Bindings at{{"s", s}, {"t", t}};
    const double exact = e.derivative("s").evaluate(at);
    const double fd =
        (e.evaluate(Bindings{{"s", s + step}, {"t", t}}) - e.evaluate(Bindings{{"s", s - step}, {"t", t}})) /
        (2 * step);
    deriv = std::max(deriv, std::abs(exact - fd) / std::max(1.0, std::abs(exact)));
  }

  o.pass = cross <= 1e-12 && bilinear <= 1e-12 && structural <= 1e-7 && deriv <= 1e-5;
  o.detail = "cross " + sci(cross) + ", bilinear " + sci(bilinear) + ", structural " + sci(structural) +
             " (limit 1e-7), derivative " + sci(deriv) + " (limit 1e-5)";
  return o;
}

// ---- 6: determinism ------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "lpencil_acceptance";
  std::filesystem::create_directories(dir);
  const std::string config = std::string(LPENCIL_FIXTURE_DIR) + "/p1.json";
  std::ostringstream sink;
  std::string texts[2];
  for (int i = 0; i < 2; ++i) {
    const std::string path = (dir / ("p1_" + std::to_string(i) + ".obj")).string();
    const char* argv[] = {"lorentz-pencil", "build", config.c_str(), "-o", path.c_str()};
    if (run_cli(5, argv, sink, sink) != kExitOk) {
      o.pass = false;
      o.notes.push_back("build failed: " + sink.str());
    }
    texts[i] = slurp(path);
  }
  std::filesystem::remove_all(dir);
  const bool same_bytes = !texts[0].empty() && texts[0] == texts[1];

  const Config cfg = example_config("P1");
  const SurfacePencil p(cfg.spec, cfg.ns);
  const SurfaceMesh a = sample_grid(p, 101, 41, Execution::Parallel);
  const SurfaceMesh b = sample_grid(p, 101, 41, Execution::Sequential);
  const bool same_vertices = a.vertices == b.vertices;

  o.pass = o.pass && same_bytes && same_vertices;
  o.detail = std::string("repeated build ") + (same_bytes ? "byte-identical" : "DIFFERS") + " (" +
             std::to_string(texts[0].size()) + " bytes); parallel vs sequential vertices " +
             (same_vertices ? "identical" : "DIFFER");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "frame fidelity", 1.0, frame_fidelity},
      {2, "theta reproduction", 1.0, theta_reproduction},
      {3, "fixture verification", 10.0, fixture_verification},
      {4, "random families", 60.0, random_families},
      {5, "kernel invariants", 5.0, kernel_invariants},
      {6, "determinism", 10.0, determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("[%s] criterion %d %s: %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_s);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  }
  std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
  return all ? 0 : 1;
}
