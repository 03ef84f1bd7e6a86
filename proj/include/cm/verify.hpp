#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cm/core.hpp"
#include "cm/io.hpp"

namespace cm::verify {

inline constexpr std::uint64_t kDefaultSeed = 20260801u;

/// Flat key=value configuration for one scenario, with embedded defaults.
class Config {
 public:
  Config(std::map<std::string, std::string> defaults,
         std::map<std::string, std::string> overrides)
      : values_(std::move(defaults)) {
    for (auto& [k, v] : overrides) values_[k] = v;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error("config: unknown key '" + key + "'");
    return it->second;
  }
  double get_double(const std::string& key) const {
    return detail::parse_double(get(key));
  }
  long get_long(const std::string& key) const { return detail::parse_long(get(key)); }
  std::uint64_t get_seed() const {
    return static_cast<std::uint64_t>(get_long("seed"));
  }

 private:
  std::map<std::string, std::string> values_;
};

struct CheckRecord {
  std::string name;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SeriesPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct ScenarioResult {
  std::string id;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  std::vector<CheckRecord> checks;
  std::vector<SeriesPoint> series;

  bool pass() const {
    for (const CheckRecord& c : checks)
      if (!c.pass) return false;
    return true;
  }

  /// residual = |lhs - rhs|, pass iff residual <= tolerance.
  void check(const std::string& name, Complex lhs, Complex rhs, double tolerance) {
    const double r = std::abs(lhs - rhs);
    checks.push_back({name, lhs, rhs, r, tolerance, r <= tolerance});
  }
  /// pass iff value <= bound + slack.
  void check_le(const std::string& name, double value, double bound, double slack) {
    const double r = std::max(0.0, value - bound);
    checks.push_back({name, Complex(value, 0.0), Complex(bound, 0.0), r, slack, r <= slack});
  }
  /// pass iff lo <= value <= hi.
  void check_range(const std::string& name, double value, double lo, double hi) {
    const bool ok = value >= lo && value <= hi;
    const double r = ok ? 0.0 : std::min(std::fabs(value - lo), std::fabs(value - hi));
    checks.push_back({name, Complex(value, 0.0), Complex(0.5 * (lo + hi), 0.0), r,
                      0.5 * (hi - lo), ok});
  }
  void check_true(const std::string& name, bool ok) {
    checks.push_back({name, Complex(ok ? 1.0 : 0.0, 0.0), Complex(1.0, 0.0),
                      ok ? 0.0 : 1.0, 0.0, ok});
  }
};

struct Scenario {
  std::string id;
  std::string description;
  std::string topic;  // identity group the scenario certifies
  std::map<std::string, std::string> defaults;
  bool has_series = false;
  std::function<void(const Config&, ScenarioResult&)> body;
};

/// All registered scenarios (defined in scenarios.hpp).
const std::vector<Scenario>& registry();

inline const Scenario& find_scenario(const std::string& id) {
  for (const Scenario& s : registry())
    if (s.id == id) return s;
  throw Error("unknown scenario '" + id + "'");
}

inline ScenarioResult run_scenario(const Scenario& s,
                                   std::map<std::string, std::string> overrides = {}) {
  std::map<std::string, std::string> defaults = s.defaults;
  defaults.emplace("seed", std::to_string(kDefaultSeed));
  Config cfg(std::move(defaults), std::move(overrides));
  ScenarioResult result;
  result.id = s.id;
  result.seed = cfg.get_seed();
  result.parameters = cfg.values();
  s.body(cfg, result);
  return result;
}

// ---------------------------------------------------------------------------
// Config files: '[scenario-id]' sections of 'key = value' lines, '#' comments.
// ---------------------------------------------------------------------------

inline std::map<std::string, std::map<std::string, std::string>> parse_config_text(
    const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::string section;
  std::istringstream in(text);
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

// ---------------------------------------------------------------------------
// Report serialization: JSON body is deterministic for a fixed seed/config;
// only the timestamp field varies between runs.
// ---------------------------------------------------------------------------

inline nlohmann::json report_json(const ScenarioResult& r, const std::string& timestamp) {
  nlohmann::json j;
  j["scenario"] = r.id;
  j["timestamp"] = timestamp;
  j["seed"] = r.seed;
  j["parameters"] = r.parameters;
  j["checks"] = nlohmann::json::array();
  for (const CheckRecord& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"lhs", {c.lhs.real(), c.lhs.imag()}},
                           {"rhs", {c.rhs.real(), c.rhs.imag()}},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  j["pass"] = r.pass();
  return j;
}

inline std::string series_csv(const ScenarioResult& r) {
  if (r.series.empty()) throw Error("scenario '" + r.id + "' produces no series");
  std::ostringstream out;
  out << "x,y,series\n";
  for (const SeriesPoint& p : r.series)
    out << detail::format_double(p.x) << "," << detail::format_double(p.y) << ","
        << p.label << "\n";
  return out.str();
}

}  // namespace cm::verify
