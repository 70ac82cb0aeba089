#include "lpencil/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "lpencil/fixture_data.hpp"

namespace lpencil {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string display(std::string_view stem) {
  std::string out(stem);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& [stem, text] : fixture_data::kFixtures) out.push_back(display(stem));
  return out;
}

std::string canonical_example_name(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& [stem, text] : fixture_data::kFixtures) {
    if (stem == key) return display(stem);
  }
  std::string known;
  for (const auto& n : example_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown example '" + std::string(name) + "' (known: " + known + ")");
}

std::string_view example_config_text(std::string_view name) {
  const std::string key = lower(canonical_example_name(name));
  for (const auto& [stem, text] : fixture_data::kFixtures) {
    if (stem == key) return text;
  }
  return {};
}

Config example_config(std::string_view name) { return parse_config_text(example_config_text(name)); }

bool example_expected_pass(std::string_view name) { return canonical_example_name(name) != "P5"; }

ExampleResult run_example(std::string_view name, const Tolerances* tol, Execution exec) {
  ExampleResult r;
  r.name = canonical_example_name(name);
  r.config = example_config(r.name);
  if (tol) r.config.tolerances = *tol;
  const SurfacePencil pencil(r.config.spec, r.config.ns);
  r.mesh = sample_grid(pencil, r.config.ns, r.config.nt, exec);
  r.report = verify_all(r.config.spec, r.config.verify_options());
  return r;
}

}  // namespace lpencil
