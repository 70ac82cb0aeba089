#include "lpencil/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpencil/config.hpp"
#include "lpencil/errors.hpp"
#include "lpencil/fixtures.hpp"
#include "lpencil/obj.hpp"
#include "lpencil/report.hpp"

namespace lpencil {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void apply_overrides(Tolerances& tol, const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("--tol " + name + ": '" + item.substr(eq + 1) + "' is not a number");
    }
    if (!(value > 0.0)) throw UsageError("--tol " + name + ": tolerance must be positive");
    if (!tol.set(name, value)) throw UsageError("--tol: unknown tolerance '" + name + "'");
  }
}

std::string fixed(double x, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

int cmd_build(const std::string& path, const std::string& output, bool sequential, std::ostream& out) {
  const Config cfg = load_config(path);
  const SurfacePencil pencil(cfg.spec, cfg.ns);
  const SurfaceMesh mesh =
      sample_grid(pencil, cfg.ns, cfg.nt, sequential ? Execution::Sequential : Execution::Parallel);
  export_obj(mesh, output);
  out << "wrote " << output << " (" << cfg.ns << " x " << cfg.nt << " vertices, curve kind: "
      << to_string(pencil.kind()) << ")\n";
  return kExitOk;
}

int cmd_verify(const std::string& path, bool as_json, const std::vector<std::string>& tol, std::ostream& out) {
  Config cfg = load_config(path);
  apply_overrides(cfg.tolerances, tol);
  const VerificationReport report = verify_all(cfg.spec, cfg.verify_options());
  out << (as_json ? report_json(report) : report_text(report));
  return report.overall ? kExitOk : kExitVerificationFailed;
}

int cmd_examples(const std::string& name, const std::string& outdir, const std::vector<std::string>& tol_args,
                 bool as_json, std::ostream& out) {
  std::vector<std::string> names = name.empty() ? example_names() : std::vector<std::string>{name};
  for (auto& n : names) {
    try {
      n = canonical_example_name(n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (!outdir.empty()) std::filesystem::create_directories(outdir);

  bool all_as_expected = true;
  bool all_pass = true;
  std::vector<std::string> json_reports;
  for (const auto& n : names) {
    Tolerances tol = example_config(n).tolerances;
    apply_overrides(tol, tol_args);
    const auto start = std::chrono::steady_clock::now();
    const ExampleResult r = run_example(n, &tol);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool expected = example_expected_pass(n);
    all_as_expected = all_as_expected && (r.report.overall == expected);
    all_pass = all_pass && r.report.overall;
    if (!outdir.empty()) export_obj(r.mesh, std::filesystem::path(outdir) / (n + ".obj"));

    if (as_json) {
      json_reports.push_back(report_json(r.report));
      continue;
    }
    out << "== " << n << ": " << (r.report.overall ? "pass" : "FAIL") << " (expected "
        << (expected ? "pass" : "fail") << ", " << fixed(secs, 3) << " s)\n";
    if (!r.report.overall || names.size() == 1) out << report_text(r.report);
  }
  if (as_json && names.size() == 1) out << json_reports.front();
  if (names.size() == 1) return all_pass ? kExitOk : kExitVerificationFailed;
  if (as_json) {
    // One array so the output stays a single JSON document.
    out << '[';
    for (std::size_t i = 0; i < json_reports.size(); ++i) {
      if (i) out << ',';
      out << json_reports[i];
    }
    out << "]\n";
  } else {
    out << (all_as_expected ? "all examples behaved as expected\n" : "unexpected example verdicts\n");
  }
  return all_as_expected ? kExitOk : kExitVerificationFailed;
}

int cmd_info(const std::string& path, std::ostream& out) {
  const Config cfg = load_config(path);
  const SurfacePencil pencil(cfg.spec, cfg.ns);
  const Range& sr = pencil.curve().s_range();
  const auto grid = sr.uniform(cfg.ns);
  double kmin = INFINITY, kmax = -INFINITY, tmin = INFINITY, tmax = -INFINITY;
  for (double s : grid) {
    const FrenetFrame f = pencil.frame(s);
    kmin = std::min(kmin, f.curvature);
    kmax = std::max(kmax, f.curvature);
    tmin = std::min(tmin, f.torsion);
    tmax = std::max(tmax, f.torsion);
  }
  if (!cfg.comment.empty()) out << cfg.comment << "\n";
  out << "curve kind:      " << to_string(pencil.kind()) << "\n";
  out << "surface type:    " << (pencil.surface_type() == SurfaceType::Spacelike ? "spacelike" : "timelike") << "\n";
  out << "unit speed dev:  " << fixed(check_unit_speed(pencil.curve(), kUnitSpeedSamples), 3) << "\n";
  out << "s range:         [" << fixed(sr.lo) << ", " << fixed(sr.hi) << "], " << cfg.ns << " samples\n";
  out << "curvature:       min " << fixed(kmin) << ", max " << fixed(kmax) << "\n";
  out << "torsion:         min " << fixed(tmin) << ", max " << fixed(tmax) << "\n";
  out << "theta(" << fixed(sr.lo) << ") = " << fixed(theta_at(pencil, sr.lo), 9) << "\n";
  out << "theta(" << fixed(sr.hi) << ") = " << fixed(theta_at(pencil, sr.hi), 9) << "\n";
  out << "u(s,t) = " << pencil.u().to_string() << "\n";
  out << "v(s,t) = " << pencil.v().to_string() << "\n";
  out << "w(s,t) = " << pencil.w().to_string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface pencils with a common line of curvature in Minkowski 3-space", "lorentz-pencil"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::string outdir;
  std::string example;
  bool as_json = false;
  bool sequential = false;
  std::vector<std::string> tol;

  auto* build = app.add_subcommand("build", "Sample the surface and write a Wavefront OBJ mesh");
  build->add_option("config", config_path, "Pencil configuration (JSON)")->required();
  build->add_option("-o,--output", output, "Output .obj path")->required();
  build->add_flag("--sequential", sequential, "Evaluate the grid on one thread");

  auto* verify = app.add_subcommand("verify", "Check that t = t0 is a line of curvature");
  verify->add_option("config", config_path, "Pencil configuration (JSON)")->required();
  verify->add_flag("--json", as_json, "Print the report as JSON");
  verify->add_option("--tol", tol, "Override a threshold, e.g. rodrigues=1e-6")->allow_extra_args(false);

  auto* examples = app.add_subcommand("examples", "Run the built-in example pencils");
  examples->add_option("name", example, "One of P1, P2, P3, P4, P5, P5c, P6");
  examples->add_option("--outdir", outdir, "Write <name>.obj meshes here");
  examples->add_flag("--json", as_json, "Print JSON reports");
  examples->add_option("--tol", tol, "Override a threshold")->allow_extra_args(false);

  auto* info = app.add_subcommand("info", "Summarise a configuration");
  info->add_option("config", config_path, "Pencil configuration (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(config_path, output, sequential, out);
    if (*verify) return cmd_verify(config_path, as_json, tol, out);
    if (*examples) return cmd_examples(example, outdir, tol, as_json, out);
    if (*info) return cmd_info(config_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lpencil
