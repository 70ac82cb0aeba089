#include "lpencil/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace lpencil {

namespace {

std::string sci(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

nlohmann::json residual_value(double r) {
  if (!std::isfinite(r)) return nullptr;
  return r;
}

}  // namespace

std::string report_text(const VerificationReport& report) {
  std::string out;
  out += "curve kind: ";
  out += report.kind ? std::string(to_string(*report.kind)) : std::string("unknown");
  out += '\n';
  out += pad("check", 16) + pad("residual", 12) + pad("threshold", 12) + "result\n";
  for (const auto& c : report.checks) {
    out += pad(c.name, 16) + pad(sci(c.residual), 12) + pad(sci(c.threshold), 12) + (c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += '\n';
  }
  if (report.conditions) {
    for (const auto& c : report.conditions->records) {
      out += pad("  " + c.name, 16) + pad(sci(c.residual), 12) + pad(sci(c.threshold), 12) +
             (c.pass ? "pass" : "FAIL") + '\n';
    }
  }
  if (report.normalization != "lorentzian") out += "normalization: " + report.normalization + '\n';
  for (const auto& w : report.warnings) out += "warning: " + w + '\n';
  out += report.overall ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

std::string report_json(const VerificationReport& report, int indent) {
  nlohmann::json j;
  j["overall"] = report.overall;
  j["curve_kind"] = report.kind ? nlohmann::json(std::string(kind_id(*report.kind))) : nlohmann::json(nullptr);
  j["normalization"] = report.normalization;
  j["checks"] = nlohmann::json::array();
  j["details"] = nlohmann::json::object();
  for (const auto& c : report.checks) {
    j["checks"].push_back(
        {{"check", c.name}, {"residual", residual_value(c.residual)}, {"threshold", c.threshold}, {"pass", c.pass}});
    if (!c.detail.empty()) j["details"][c.name] = c.detail;
  }
  if (report.conditions) {
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : report.conditions->records) {
      j["conditions"].push_back({{"check", c.name},
                                 {"residual", residual_value(c.residual)},
                                 {"threshold", c.threshold},
                                 {"pass", c.pass}});
    }
  } else {
    j["conditions"] = nullptr;
  }
  j["warnings"] = report.warnings;
  return j.dump(indent) + "\n";
}

}  // namespace lpencil
