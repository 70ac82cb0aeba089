#pragma once

#include <string>

#include "lpencil/verify.hpp"

namespace lpencil {

/// Line-oriented table: one line per check, then warnings and the verdict.
std::string report_text(const VerificationReport& report);

/// {"overall", "curve_kind", "normalization",
///  "checks": [{"check", "residual", "threshold", "pass"}...],
///  "conditions": [...same record shape...] or null,
///  "details": {check: text}, "warnings": [text...]}
/// Residuals that could not be computed are written as null.
std::string report_json(const VerificationReport& report, int indent = 2);

}  // namespace lpencil
