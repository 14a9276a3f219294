// Scenario runner:
//   qpcnoise run <config> [--out DIR] [--threads N]
//   qpcnoise validate <config>
// Exit codes: 0 success, 2 config error, 3 solver failure.

#include <iostream>

#include <CLI11.hpp>

#include "qpcnoise/config.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/scenarios.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional master equation simulator for a charge qubit measured by a point contact"};
  app.set_version_flag("--version", qpcnoise::version());
  app.require_subcommand(1);

  std::string run_path;
  std::string out_dir;
  int threads = 1;
  auto* run_cmd = app.add_subcommand("run", "Run the scenario described by a config file");
  run_cmd->add_option("config", run_path, "Config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config file without running it");
  validate_cmd->add_option("config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*validate_cmd) {
      const auto cfg = qpcnoise::load_config(validate_path, qpcnoise::process_environment());
      std::cout << "ok: scenario " << qpcnoise::scenario_name(cfg.scenario) << '\n';
      return 0;
    }
    const auto cfg = qpcnoise::load_config(run_path, qpcnoise::process_environment());
    qpcnoise::ScenarioResult result;
    const std::string path = qpcnoise::run(cfg, out_dir, threads, &result);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << path << '\n';
    return 0;
  } catch (const qpcnoise::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qpcnoise::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
