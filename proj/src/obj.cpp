#include "lpencil/obj.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "lpencil/errors.hpp"

namespace lpencil {

namespace {

// %.9g through snprintf is locale dependent only in the decimal point; the
// "C" locale is what every process starts with and we never change it.
void append_g9(std::string& out, double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.9g", x);
  out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace

std::string obj_text(const SurfaceMesh& mesh, std::span<const std::size_t> polyline) {
  if (mesh.vertices.size() != mesh.ns * mesh.nt) throw Error("mesh vertex count does not match its grid");
  std::string out = "# lorentz-pencil v1\n";
  out.reserve(out.size() + mesh.vertices.size() * 40);
  for (const Vector3& v : mesh.vertices) {
    out += "v ";
    append_g9(out, v.x1);
    out += ' ';
    append_g9(out, v.x2);
    out += ' ';
    append_g9(out, v.x3);
    out += '\n';
  }
  const std::size_t nt = mesh.nt;
  for (std::size_t i = 0; i + 1 < mesh.ns; ++i) {
    for (std::size_t j = 0; j + 1 < nt; ++j) {
      const std::size_t a = i * nt + j + 1;
      const std::size_t b = (i + 1) * nt + j + 1;
      out += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' + std::to_string(b + 1) + ' ' +
             std::to_string(a + 1) + '\n';
    }
  }
  if (!polyline.empty()) {
    out += 'l';
    for (std::size_t idx : polyline) {
      if (idx >= mesh.vertices.size()) throw Error("polyline index out of range");
      out += ' ' + std::to_string(idx + 1);
    }
    out += '\n';
  }
  return out;
}

void export_obj(const SurfaceMesh& mesh, std::span<const std::size_t> polyline, const std::filesystem::path& path) {
  const std::string text = obj_text(mesh, polyline);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move mesh into place at " + path.string());
  }
}

void export_obj(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  const auto row = mesh.curve_row();
  export_obj(mesh, row, path);
}

}  // namespace lpencil
