#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpcnoise/hierarchy.hpp"

namespace qpcnoise {

// Flat "dotted.key = value" text, '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;

[[nodiscard]] KeyValues parse_key_values(const std::string& text);
[[nodiscard]] KeyValues load_key_values(const std::string& path);

// OVERRIDE_DETECTOR__V=3 sets detector.v: prefix stripped, "__" -> ".", lower-cased.
// environment holds NAME=VALUE entries.
void apply_env_overrides(KeyValues& kv, const std::vector<std::string>& environment);
[[nodiscard]] std::vector<std::string> process_environment();

enum class Scenario { Spectrum, Sweep, Pnt, Current, Relax };
enum class InitialState { Steady, Excited, Ground, DotA, DotB, Superposition, Mixed };

struct OmegaGrid {
  double min = 0.0;
  double max = 6.0;
  int count = 241;
};

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

struct RunConfig {
  Scenario scenario = Scenario::Spectrum;
  QubitParams qubit;
  DetectorParams detector;
  FilterMode filter = FilterMode::Full;
  SolverConfig solver;
  OmegaGrid omega_grid;
  std::optional<SweepAxis> sweep;
  InitialState initial = InitialState::Steady;
  std::string output_path;
  // Every key with its effective value, defaults included; used for headers
  // and for re-building variants along a sweep.
  KeyValues resolved;
};

// Throws ConfigError for unknown keys, malformed numbers, missing required
// keys (scenario, detector.t_amp) and bad grids.
[[nodiscard]] RunConfig build_config(const KeyValues& kv);
[[nodiscard]] RunConfig load_config(const std::string& path, const std::vector<std::string>& environment = {});

// Same config with one key replaced; used along sweep axes.
[[nodiscard]] RunConfig with_value(const RunConfig& cfg, const std::string& key, double value);

[[nodiscard]] std::string scenario_name(Scenario s);
[[nodiscard]] DensityMatrix initial_density(InitialState s, const Model& m);

// Shortest representation that round-trips, '.' as decimal separator.
[[nodiscard]] std::string format_number(double x);

}  // namespace qpcnoise
