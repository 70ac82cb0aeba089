#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lpencil/cli.hpp"
#include "lpencil/config.hpp"
#include "lpencil/errors.hpp"
#include "lpencil/fixtures.hpp"
#include "lpencil/obj.hpp"
#include "lpencil/report.hpp"

namespace py = pybind11;
using namespace lpencil;

namespace {

Config with_tolerances(const std::string& text, const std::map<std::string, double>& tol) {
  Config cfg = parse_config_text(text);
  for (const auto& [name, value] : tol) {
    if (!(value > 0.0)) throw ConfigError("", "tolerance '" + name + "' must be positive");
    if (!cfg.tolerances.set(name, value)) throw ConfigError("", "unknown tolerance '" + name + "'");
  }
  return cfg;
}

py::array_t<double> to_array(const SurfaceMesh& mesh) {
  py::array_t<double> out({mesh.ns, mesh.nt, std::size_t{3}});
  auto view = out.mutable_unchecked<3>();
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    for (std::size_t j = 0; j < mesh.nt; ++j) {
      const Vector3& v = mesh.at(i, j);
      view(i, j, 0) = v.x1;
      view(i, j, 1) = v.x2;
      view(i, j, 2) = v.x3;
    }
  }
  return out;
}

SurfaceMesh sample(const Config& cfg, std::size_t ns, std::size_t nt, bool parallel) {
  const SurfacePencil pencil(cfg.spec, cfg.ns);
  py::gil_scoped_release release;
  return sample_grid(pencil, ns ? ns : cfg.ns, nt ? nt : cfg.nt,
                     parallel ? Execution::Parallel : Execution::Sequential);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Surface pencils with a common line of curvature in Minkowski 3-space";

  // Translators registered later are tried first, so the subclasses win.
  const auto& base = py::register_exception<Error>(m, "LorentzPencilError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<CurveError>(m, "CurveError", base.ptr());
  py::register_exception<SpecError>(m, "SpecError", base.ptr());

  m.def("example_names", &example_names);
  m.def("example_config_text", [](const std::string& name) { return std::string(example_config_text(name)); });

  m.def(
      "verify_json",
      [](const std::string& text, const std::map<std::string, double>& tol) {
        const Config cfg = with_tolerances(text, tol);
        VerificationReport report;
        {
          py::gil_scoped_release release;
          report = verify_all(cfg.spec, cfg.verify_options());
        }
        return report_json(report);
      },
      py::arg("config_text"), py::arg("tolerances") = std::map<std::string, double>{},
      "Runs every check and returns the JSON report.");

  m.def(
      "sample_grid",
      [](const std::string& text, std::size_t ns, std::size_t nt, bool parallel) {
        return to_array(sample(parse_config_text(text), ns, nt, parallel));
      },
      py::arg("config_text"), py::arg("ns") = 0, py::arg("nt") = 0, py::arg("parallel") = true,
      "Surface points as an (ns, nt, 3) array; 0 uses the config's grid.");

  m.def(
      "obj_text",
      [](const std::string& text) {
        const Config cfg = parse_config_text(text);
        const SurfaceMesh mesh = sample(cfg, 0, 0, true);
        return obj_text(mesh, mesh.curve_row());
      },
      py::arg("config_text"));

  m.def(
      "frame",
      [](const std::string& text, double s) {
        const Config cfg = parse_config_text(text);
        const SurfacePencil pencil(cfg.spec, cfg.ns);
        const FrenetFrame f = pencil.frame(s);
        auto vec = [](const Vector3& v) { return std::vector<double>{v.x1, v.x2, v.x3}; };
        py::dict d;
        d["T"] = vec(f.T);
        d["N"] = vec(f.N);
        d["B"] = vec(f.B);
        d["curvature"] = f.curvature;
        d["torsion"] = f.torsion;
        d["theta"] = theta_at(pencil, s);
        d["kind"] = std::string(kind_id(pencil.kind()));
        return d;
      },
      py::arg("config_text"), py::arg("s"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "lorentz-pencil");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
