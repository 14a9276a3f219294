#pragma once

#include <string>
#include <vector>

#include "qpcnoise/config.hpp"

namespace qpcnoise {

struct ScenarioResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  // Extra header lines (without "# "), e.g. diagnostics and solver warnings.
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  [[nodiscard]] std::string body() const;
};

[[nodiscard]] Model make_model(const RunConfig& cfg);

// Runs the configured scenario in memory. threads bounds the sweep worker pool.
[[nodiscard]] ScenarioResult run_scenario(const RunConfig& cfg, int threads = 1);

// Comment header: code version, every resolved key and derived qubit quantities.
[[nodiscard]] std::string render_header(const RunConfig& cfg, const ScenarioResult& result);

// Writes header + body to out_dir / cfg.output_path and returns the path.
std::string run(const RunConfig& cfg, const std::string& out_dir, int threads, ScenarioResult* result = nullptr);

[[nodiscard]] std::string version();

}  // namespace qpcnoise
