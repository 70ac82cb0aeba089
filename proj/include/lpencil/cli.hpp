#pragma once

#include <iosfwd>

namespace lpencil {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the lorentz-pencil tool:
///   build <config> -o <mesh.obj>
///   verify <config> [--json] [--tol name=value]...
///   examples [name] [--outdir D] [--tol name=value]...
///   info <config>
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpencil
