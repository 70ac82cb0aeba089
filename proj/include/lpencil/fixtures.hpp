#pragma once

// The built-in example pencils P1..P6 and P5c. Their configs live in
// fixtures/*.json and are compiled in.

#include <string>
#include <string_view>
#include <vector>

#include "lpencil/config.hpp"
#include "lpencil/pencil.hpp"
#include "lpencil/verify.hpp"

namespace lpencil {

/// P1, P2, P3, P4, P5, P5c, P6.
std::vector<std::string> example_names();

/// Canonical name for a case-insensitive match ("p5C" -> "P5c"); throws
/// std::invalid_argument for unknown names.
std::string canonical_example_name(std::string_view name);

std::string_view example_config_text(std::string_view name);
Config example_config(std::string_view name);

/// Every example is expected to verify except P5, whose w does not vanish
/// at t0.
bool example_expected_pass(std::string_view name);

struct ExampleResult {
  std::string name;
  Config config;
  SurfaceMesh mesh;
  VerificationReport report;
};

/// `tol` replaces the config's thresholds when given.
ExampleResult run_example(std::string_view name, const Tolerances* tol = nullptr,
                          Execution exec = Execution::Parallel);

}  // namespace lpencil
