#pragma once

// Wavefront OBJ export: "# lorentz-pencil v1" header, one "v" line per
// vertex (%.9g), s-major quads with 1-based indices, then the curve row as
// an "l" polyline. LF line endings, locale independent.

#include <filesystem>
#include <span>
#include <string>

#include "lpencil/pencil.hpp"

namespace lpencil {

std::string obj_text(const SurfaceMesh& mesh, std::span<const std::size_t> polyline);

/// Writes obj_text to a temporary file next to `path`, then renames it.
void export_obj(const SurfaceMesh& mesh, std::span<const std::size_t> polyline, const std::filesystem::path& path);
void export_obj(const SurfaceMesh& mesh, const std::filesystem::path& path);

}  // namespace lpencil
