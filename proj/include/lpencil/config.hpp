#pragma once

// JSON pencil configurations.
//
// {
//   "comment": "...",                                    optional
//   "curve": {"x": "...", "y": "...", "z": "...", "s_range": [L1, L2]},
//   "t_range": [T1, T2], "t0": 0, "theta0": 0,           theta0 optional
//   "lambda": "expression in s",
//   "marching_scale": {"direct": {"u", "v", "w"}}
//                   | {"polynomial": {"p", "a", "l", "m", "n", "U", "V", "W"}}
//                   | {"composed": {...polynomial fields..., "f", "g", "h"}},
//   "grid": {"ns": 101, "nt": 41},                       optional
//   "tolerances": {"rodrigues": 1e-5, ...}               optional
// }
//
// Unknown keys are rejected. Threshold precedence, lowest first: built-in
// defaults, LORENTZ_PENCIL_TOL, the "tolerances" object, command-line flags.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lpencil/pencil.hpp"
#include "lpencil/verify.hpp"

namespace lpencil {

inline constexpr const char* kToleranceEnvVar = "LORENTZ_PENCIL_TOL";
inline constexpr std::size_t kUnitSpeedSamples = 201;

struct Config {
  PencilSpec spec;
  std::size_t ns = 101;
  std::size_t nt = 41;
  Tolerances tolerances;
  std::string comment;

  VerifyOptions verify_options() const;
};

/// Value of LORENTZ_PENCIL_TOL, if set. Throws ConfigError when it is not a
/// positive decimal number.
std::optional<double> env_tolerance();
/// Built-in defaults with LORENTZ_PENCIL_TOL applied.
Tolerances default_tolerances();

/// Parses and validates a configuration document: schema (ConfigError with
/// a JSON pointer), expressions (ConfigError carrying the parse offset), unit
/// speed (CurveError reporting the deviation), then pencil construction.
Config parse_config_text(std::string_view text);
Config load_config(const std::filesystem::path& path);

}  // namespace lpencil
