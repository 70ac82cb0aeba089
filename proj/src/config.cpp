#include "lpencil/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lpencil/errors.hpp"

namespace lpencil {

using json = nlohmann::json;

VerifyOptions Config::verify_options() const {
  VerifyOptions o;
  o.tol = tolerances;
  o.n_s = ns;
  o.n_t = nt;
  return o;
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv(kToleranceEnvVar);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view text(raw);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError("", std::string(kToleranceEnvVar) + " must be a positive decimal number, got '" +
                              std::string(text) + "'");
  }
  return value;
}

Tolerances default_tolerances() {
  if (auto v = env_tolerance()) return Tolerances::uniform(*v);
  return Tolerances{};
}

namespace {

std::string child(const std::string& ptr, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

const json& object_at(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
  return j;
}

void reject_unknown(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(child(ptr, key), "unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& ptr, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(child(ptr, key), "missing required key '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw ConfigError(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(ptr, "expected a finite number");
  return v;
}

std::size_t count(const json& j, const std::string& ptr, std::size_t min) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(ptr, "expected an integer");
  const auto v = j.get<long long>();
  if (v < static_cast<long long>(min)) throw ConfigError(ptr, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

Range range(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(ptr, "expected a two-element array [lo, hi]");
  Range r{number(j[0], child(ptr, 0)), number(j[1], child(ptr, 1))};
  if (!(r.lo < r.hi)) throw ConfigError(ptr, "range must be ordered with lo < hi");
  return r;
}

Expression expression(const json& j, const std::string& ptr, const std::set<std::string>& vars) {
  if (!j.is_string()) throw ConfigError(ptr, "expected an expression string");
  try {
    return parse(j.get<std::string>(), vars);
  } catch (const ParseError& e) {
    throw ConfigError(ptr, e.what());
  }
}

Expression expression_at(const json& obj, const std::string& ptr, const std::string& key,
                         const std::set<std::string>& vars) {
  return expression(require(obj, ptr, key), child(ptr, key), vars);
}

PolynomialFamily polynomial(const json& obj, const std::string& ptr) {
  PolynomialFamily fam;
  fam.p = static_cast<int>(count(require(obj, ptr, "p"), child(ptr, "p"), 1));
  const std::string aptr = child(ptr, "a");
  const json& a = require(obj, ptr, "a");
  if (!a.is_array() || a.size() != 3) throw ConfigError(aptr, "expected three coefficient rows");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string rptr = child(aptr, i);
    if (!a[i].is_array() || a[i].size() != static_cast<std::size_t>(fam.p)) {
      throw ConfigError(rptr, "expected " + std::to_string(fam.p) + " coefficients (p)");
    }
    for (std::size_t k = 0; k < a[i].size(); ++k) fam.a[i].push_back(number(a[i][k], child(rptr, k)));
  }
  fam.l = expression_at(obj, ptr, "l", {"s"});
  fam.m = expression_at(obj, ptr, "m", {"s"});
  fam.n = expression_at(obj, ptr, "n", {"s"});
  fam.U = expression_at(obj, ptr, "U", {"t"});
  fam.V = expression_at(obj, ptr, "V", {"t"});
  fam.W = expression_at(obj, ptr, "W", {"t"});
  return fam;
}

MarchingScale marching_scale(const json& j, const std::string& ptr) {
  object_at(j, ptr);
  reject_unknown(j, ptr, {"direct", "polynomial", "composed"});
  if (j.size() != 1) throw ConfigError(ptr, "exactly one of 'direct', 'polynomial', 'composed' is required");
  const auto& [key, body] = *j.items().begin();
  const std::string bptr = child(ptr, key);
  object_at(body, bptr);
  if (key == "direct") {
    reject_unknown(body, bptr, {"u", "v", "w"});
    return DirectScale{expression_at(body, bptr, "u", {"s", "t"}), expression_at(body, bptr, "v", {"s", "t"}),
                       expression_at(body, bptr, "w", {"s", "t"})};
  }
  if (key == "polynomial") {
    reject_unknown(body, bptr, {"p", "a", "l", "m", "n", "U", "V", "W"});
    return polynomial(body, bptr);
  }
  reject_unknown(body, bptr, {"p", "a", "l", "m", "n", "U", "V", "W", "f", "g", "h"});
  ComposedFamily c;
  c.base = polynomial(body, bptr);
  c.f = expression_at(body, bptr, "f", {"x"});
  c.g = expression_at(body, bptr, "g", {"x"});
  c.h = expression_at(body, bptr, "h", {"x"});
  return c;
}

std::string format_deviation(double d) {
  std::ostringstream os;
  os.precision(9);
  os << d;
  return os.str();
}

}  // namespace

Config parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }

  const std::string root;
  object_at(doc, root);
  reject_unknown(doc, root,
                 {"comment", "curve", "t_range", "t0", "theta0", "lambda", "marching_scale", "grid", "tolerances"});

  Config cfg;
  if (auto it = doc.find("comment"); it != doc.end()) {
    if (!it->is_string()) throw ConfigError("/comment", "expected a string");
    cfg.comment = it->get<std::string>();
  }

  const json& curve = require(doc, root, "curve");
  object_at(curve, "/curve");
  reject_unknown(curve, "/curve", {"x", "y", "z", "s_range"});
  cfg.spec.curve.x = expression_at(curve, "/curve", "x", {"s"});
  cfg.spec.curve.y = expression_at(curve, "/curve", "y", {"s"});
  cfg.spec.curve.z = expression_at(curve, "/curve", "z", {"s"});
  cfg.spec.curve.s_range = range(require(curve, "/curve", "s_range"), "/curve/s_range");

  cfg.spec.t_range = range(require(doc, root, "t_range"), "/t_range");
  cfg.spec.t0 = number(require(doc, root, "t0"), "/t0");
  if (!cfg.spec.t_range.contains(cfg.spec.t0)) throw ConfigError("/t0", "t0 must lie within t_range");
  if (auto it = doc.find("theta0"); it != doc.end()) cfg.spec.theta0 = number(*it, "/theta0");
  cfg.spec.lambda = expression_at(doc, root, "lambda", {"s"});
  cfg.spec.marching = marching_scale(require(doc, root, "marching_scale"), "/marching_scale");

  if (auto it = doc.find("grid"); it != doc.end()) {
    object_at(*it, "/grid");
    reject_unknown(*it, "/grid", {"ns", "nt"});
    if (auto ns = it->find("ns"); ns != it->end()) cfg.ns = count(*ns, "/grid/ns", 2);
    if (auto nt = it->find("nt"); nt != it->end()) cfg.nt = count(*nt, "/grid/nt", 2);
  }

  cfg.tolerances = default_tolerances();
  if (auto it = doc.find("tolerances"); it != doc.end()) {
    object_at(*it, "/tolerances");
    for (const auto& [key, value] : it->items()) {
      const std::string ptr = child("/tolerances", key);
      const double v = number(value, ptr);
      if (!(v > 0.0)) throw ConfigError(ptr, "tolerance must be positive");
      if (!cfg.tolerances.set(key, v)) throw ConfigError(ptr, "unknown tolerance '" + key + "'");
    }
  }

  const Curve curve_obj(cfg.spec.curve);
  const double deviation = check_unit_speed(curve_obj, kUnitSpeedSamples);
  if (deviation > cfg.tolerances.unit_speed) {
    throw CurveError(CurveError::Reason::NotUnitSpeed,
                     "curve is not unit speed: max ||<r',r'>| - 1| = " + format_deviation(deviation));
  }

  const SurfacePencil pencil(cfg.spec, cfg.ns);
  cfg.spec.kind = pencil.kind();
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace lpencil
