// cmverify: scenario runner for the square-root-measure calculus. Every
// registered scenario reproduces one family of identities as a deterministic,
// seeded, machine-readable verification.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cm/scenarios.hpp"

namespace {

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::map<std::string, std::string> overrides_for(
    const cm::verify::Scenario& s,
    const std::map<std::string, std::map<std::string, std::string>>& config,
    const std::string& seed_flag) {
  std::map<std::string, std::string> o;
  if (auto it = config.find(s.id); it != config.end()) o = it->second;
  if (!seed_flag.empty()) o["seed"] = seed_flag;
  return o;
}

int run_one(const cm::verify::Scenario& s,
            const std::map<std::string, std::string>& overrides,
            const std::string& out_path, bool quiet) {
  const cm::verify::ScenarioResult r = cm::verify::run_scenario(s, overrides);
  const nlohmann::json j = cm::verify::report_json(r, iso_timestamp());
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    cm::write_file(out_path, j.dump(2) + "\n");
  }
  if (!quiet) {
    for (const auto& c : r.checks)
      std::fprintf(stderr, "  [%s] %s (residual %.3g, tolerance %.3g)\n",
                   c.pass ? "ok" : "FAIL", c.name.c_str(), c.residual, c.tolerance);
    std::fprintf(stderr, "%s: %s\n", s.id.c_str(), r.pass() ? "PASS" : "FAIL");
  }
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmverify: deterministic verification scenarios for the "
               "square-root-measure calculus"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "print the scenario catalog with defaults");

  std::string scenario_id, config_path, out_path, seed_flag;
  bool run_all = false, parallel = false, quiet = false;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and write its report");
  run_cmd->add_option("--scenario", scenario_id, "scenario id");
  run_cmd->add_option("--config", config_path, "key=value config file with [scenario] sections");
  run_cmd->add_option("--out", out_path, "report path (stdout when omitted)");
  run_cmd->add_option("--seed", seed_flag, "seed override");
  run_cmd->add_flag("--all", run_all, "run every registered scenario");
  run_cmd->add_flag("--parallel", parallel, "run scenarios concurrently (with --all)");
  run_cmd->add_flag("--quiet", quiet, "suppress per-check progress on stderr");

  std::string emit_id, emit_out, emit_config, emit_seed;
  auto* emit_cmd = app.add_subcommand("emit", "write a scenario's data series as CSV");
  emit_cmd->add_option("--scenario", emit_id, "scenario id")->required();
  emit_cmd->add_option("--out", emit_out, "series path")->required();
  emit_cmd->add_option("--config", emit_config, "config file");
  emit_cmd->add_option("--seed", emit_seed, "seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& s : cm::verify::registry()) {
        std::printf("%-38s %s\n", s.id.c_str(), s.description.c_str());
        std::printf("%-38s   covers: %s\n", "", s.topic.c_str());
        std::string defaults = "seed=" + std::to_string(cm::verify::kDefaultSeed);
        for (const auto& [k, v] : s.defaults) defaults += " " + k + "=" + v;
        std::printf("%-38s   defaults: %s\n", "", defaults.c_str());
      }
      return 0;
    }

    std::map<std::string, std::map<std::string, std::string>> config;
    const std::string cfg_path = emit_cmd->parsed() ? emit_config : config_path;
    if (!cfg_path.empty())
      config = cm::verify::parse_config_text(cm::read_file(cfg_path));

    if (emit_cmd->parsed()) {
      const auto& s = cm::verify::find_scenario(emit_id);
      const auto r = cm::verify::run_scenario(s, overrides_for(s, config, emit_seed));
      const std::string csv = cm::verify::series_csv(r);  // throws if no series
      cm::write_file(emit_out, csv);
      return r.pass() ? 0 : 1;
    }

    if (run_all) {
      int worst = 0;
      if (parallel) {
        std::vector<std::future<int>> futs;
        for (const auto& s : cm::verify::registry())
          futs.push_back(std::async(std::launch::async, [&, sp = &s] {
            const std::string path =
                out_path.empty() ? "" : out_path + "." + sp->id + ".json";
            return run_one(*sp, overrides_for(*sp, config, seed_flag), path, true);
          }));
        for (std::size_t i = 0; i < futs.size(); ++i) {
          const int rc = futs[i].get();
          std::fprintf(stderr, "%s: %s\n", cm::verify::registry()[i].id.c_str(),
                       rc == 0 ? "PASS" : "FAIL");
          worst = std::max(worst, rc);
        }
      } else {
        for (const auto& s : cm::verify::registry()) {
          const std::string path =
              out_path.empty() ? "" : out_path + "." + s.id + ".json";
          worst = std::max(worst, run_one(s, overrides_for(s, config, seed_flag),
                                          path, quiet));
        }
      }
      return worst;
    }

    if (scenario_id.empty()) {
      std::fprintf(stderr, "run: --scenario <id> or --all is required\n");
      return 2;
    }
    const auto& s = cm::verify::find_scenario(scenario_id);
    return run_one(s, overrides_for(s, config, seed_flag), out_path, quiet);
  } catch (const cm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
