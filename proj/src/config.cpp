#include "qpcnoise/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qpcnoise/errors.hpp"
#include "qpcnoise/observables.hpp"

extern char** environ;

namespace qpcnoise {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(const std::string& key, const std::string& text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw ConfigError("key '" + key + "': expected a finite number, got '" + text + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& text) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = lower(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

// Numeric keys a sweep may vary.
const std::set<std::string>& numeric_keys() {
  static const std::set<std::string> keys = {
      "qubit.epsilon", "qubit.omega", "qubit.cos_theta", "detector.t_amp", "detector.chi", "detector.g_l",
      "detector.g_r",  "detector.v",  "detector.temp",   "solver.dt",      "solver.t_final"};
  return keys;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = numeric_keys();
    for (const char* extra : {"scenario", "qubit.normalize", "model.filter", "solver.n_max", "solver.n_min",
                              "solver.steady_tol", "solver.samples", "omega_grid.min", "omega_grid.max",
                              "omega_grid.count", "sweep.axis", "sweep.values", "initial.state", "output.path"}) {
      k.insert(extra);
    }
    return k;
  }();
  return keys;
}

Scenario parse_scenario(const std::string& s) {
  if (s == "spectrum") return Scenario::Spectrum;
  if (s == "sweep") return Scenario::Sweep;
  if (s == "pnt") return Scenario::Pnt;
  if (s == "current") return Scenario::Current;
  if (s == "relax") return Scenario::Relax;
  throw ConfigError("unknown scenario '" + s + "' (expected spectrum, sweep, pnt, current or relax)");
}

InitialState parse_initial(const std::string& s) {
  if (s == "steady") return InitialState::Steady;
  if (s == "excited") return InitialState::Excited;
  if (s == "ground") return InitialState::Ground;
  if (s == "a") return InitialState::DotA;
  if (s == "b") return InitialState::DotB;
  if (s == "superposition") return InitialState::Superposition;
  if (s == "mixed") return InitialState::Mixed;
  throw ConfigError("unknown initial.state '" + s + "'");
}

std::string default_initial(Scenario s) {
  switch (s) {
    case Scenario::Relax: return "excited";
    case Scenario::Pnt: return "superposition";
    default: return "steady";
  }
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_env_overrides(KeyValues& kv, const std::vector<std::string>& environment) {
  static constexpr std::string_view prefix = "OVERRIDE_";
  for (const auto& entry : environment) {
    if (entry.rfind(prefix, 0) != 0) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    std::string name = lower(entry.substr(prefix.size(), eq - prefix.size()));
    std::string key;
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (name[i] == '_' && i + 1 < name.size() && name[i + 1] == '_') {
        key += '.';
        ++i;
      } else {
        key += name[i];
      }
    }
    kv[key] = trim(entry.substr(eq + 1));
  }
}

std::vector<std::string> process_environment() {
  std::vector<std::string> env;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) env.emplace_back(*e);
  return env;
}

RunConfig build_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (!known_keys().contains(key)) throw ConfigError("unknown key '" + key + "'");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto number = [&](const std::string& key, double fallback) {
    const auto v = get(key);
    return v ? parse_double(key, *v) : fallback;
  };

  RunConfig cfg;
  const auto scenario = get("scenario");
  if (!scenario) throw ConfigError("missing required key 'scenario'");
  cfg.scenario = parse_scenario(*scenario);

  // Qubit: either (epsilon, omega) or cos_theta with delta = 1.
  const bool normalize = get("qubit.normalize") ? parse_bool("qubit.normalize", *get("qubit.normalize")) : true;
  if (const auto ct = get("qubit.cos_theta")) {
    if (get("qubit.epsilon") || get("qubit.omega")) {
      throw ConfigError("give either qubit.cos_theta or qubit.epsilon/qubit.omega, not both");
    }
    const double c = parse_double("qubit.cos_theta", *ct);
    if (c < -1.0 || c > 1.0) throw ConfigError("qubit.cos_theta must lie in [-1, 1]");
    cfg.qubit = {0.5 * c, 0.5 * std::sqrt(1.0 - c * c)};
  } else {
    cfg.qubit = {number("qubit.epsilon", 0.0), number("qubit.omega", 0.5)};
    if (normalize) {
      const double delta = diagonalize(cfg.qubit).delta;
      cfg.qubit.epsilon /= delta;
      cfg.qubit.omega /= delta;
    }
  }
  (void)diagonalize(cfg.qubit);

  if (!get("detector.t_amp")) throw ConfigError("missing required key 'detector.t_amp'");
  cfg.detector.t_amp = number("detector.t_amp", 1.0);
  cfg.detector.chi = number("detector.chi", 0.1);
  cfg.detector.g_l = number("detector.g_l", 2.5);
  cfg.detector.g_r = number("detector.g_r", 2.5);
  cfg.detector.v = number("detector.v", 2.0);
  cfg.detector.temp = number("detector.temp", 1.0);
  cfg.detector.validate();

  const std::string filter = get("model.filter").value_or("full");
  if (filter == "full") {
    cfg.filter = FilterMode::Full;
  } else if (filter == "frozen") {
    cfg.filter = FilterMode::Frozen;
  } else {
    throw ConfigError("model.filter must be 'full' or 'frozen'");
  }

  cfg.solver.dt = number("solver.dt", 0.0);
  cfg.solver.t_final = number("solver.t_final", 0.0);
  if (cfg.solver.dt < 0.0 || cfg.solver.t_final < 0.0) throw ConfigError("solver.dt and solver.t_final must be >= 0");
  if (cfg.solver.dt > 0.0 && cfg.solver.t_final > 0.0 && cfg.solver.t_final < cfg.solver.dt) {
    throw ConfigError("solver.t_final must be >= solver.dt");
  }
  if (const auto v = get("solver.n_max")) cfg.solver.n_max = parse_int("solver.n_max", *v);
  if (cfg.solver.n_max < 0) throw ConfigError("solver.n_max must be >= 0 (0 = auto)");
  if (const auto v = get("solver.n_min")) {
    cfg.solver.n_min = parse_int("solver.n_min", *v);
    if (*cfg.solver.n_min > 0) throw ConfigError("solver.n_min must be <= 0");
  }
  cfg.solver.steady_tol = number("solver.steady_tol", 1e-10);
  if (!(cfg.solver.steady_tol > 0.0)) throw ConfigError("solver.steady_tol must be > 0");
  if (const auto v = get("solver.samples")) cfg.solver.samples = parse_int("solver.samples", *v);
  if (cfg.solver.samples < 1) throw ConfigError("solver.samples must be >= 1");

  cfg.omega_grid.min = number("omega_grid.min", 0.0);
  cfg.omega_grid.max = number("omega_grid.max", 6.0);
  if (const auto v = get("omega_grid.count")) cfg.omega_grid.count = parse_int("omega_grid.count", *v);
  if (cfg.omega_grid.min < 0.0) throw ConfigError("omega_grid.min must be >= 0");
  (void)uniform_grid(cfg.omega_grid.min, cfg.omega_grid.max, cfg.omega_grid.count);

  const auto axis = get("sweep.axis");
  const auto values = get("sweep.values");
  if (axis || values) {
    if (!axis || !values) throw ConfigError("sweep.axis and sweep.values must be given together");
    if (!numeric_keys().contains(*axis)) throw ConfigError("sweep.axis '" + *axis + "' is not a sweepable key");
    SweepAxis s{*axis, parse_list("sweep.values", *values)};
    if (s.values.empty()) throw ConfigError("sweep.values is empty");
    if (!std::is_sorted(s.values.begin(), s.values.end()) ||
        std::adjacent_find(s.values.begin(), s.values.end()) != s.values.end()) {
      throw ConfigError("sweep.values must be strictly increasing");
    }
    cfg.sweep = std::move(s);
  }
  if (cfg.scenario == Scenario::Sweep && !cfg.sweep) throw ConfigError("scenario 'sweep' needs sweep.axis and sweep.values");

  cfg.initial = parse_initial(get("initial.state").value_or(default_initial(cfg.scenario)));
  cfg.output_path = get("output.path").value_or(scenario_name(cfg.scenario) + ".csv");

  // Effective values for headers.
  KeyValues& r = cfg.resolved;
  r = kv;
  r["scenario"] = scenario_name(cfg.scenario);
  r["qubit.normalize"] = normalize ? "true" : "false";
  if (!kv.contains("qubit.cos_theta")) {
    r["qubit.epsilon"] = format_number(cfg.qubit.epsilon);
    r["qubit.omega"] = format_number(cfg.qubit.omega);
  }
  r["detector.t_amp"] = format_number(cfg.detector.t_amp);
  r["detector.chi"] = format_number(cfg.detector.chi);
  r["detector.g_l"] = format_number(cfg.detector.g_l);
  r["detector.g_r"] = format_number(cfg.detector.g_r);
  r["detector.v"] = format_number(cfg.detector.v);
  r["detector.temp"] = format_number(cfg.detector.temp);
  r["model.filter"] = filter;
  r["solver.dt"] = format_number(cfg.solver.dt);
  r["solver.t_final"] = format_number(cfg.solver.t_final);
  r["solver.n_max"] = std::to_string(cfg.solver.n_max);
  r["solver.steady_tol"] = format_number(cfg.solver.steady_tol);
  r["solver.samples"] = std::to_string(cfg.solver.samples);
  r["omega_grid.min"] = format_number(cfg.omega_grid.min);
  r["omega_grid.max"] = format_number(cfg.omega_grid.max);
  r["omega_grid.count"] = std::to_string(cfg.omega_grid.count);
  r["initial.state"] = get("initial.state").value_or(default_initial(cfg.scenario));
  r["output.path"] = cfg.output_path;
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& environment) {
  KeyValues kv = load_key_values(path);
  apply_env_overrides(kv, environment);
  return build_config(kv);
}

RunConfig with_value(const RunConfig& cfg, const std::string& key, double value) {
  KeyValues kv = cfg.resolved;
  // Drop derived qubit entries so that a swept epsilon/omega/cos_theta is re-normalised.
  if (key == "qubit.cos_theta") {
    kv.erase("qubit.epsilon");
    kv.erase("qubit.omega");
  } else if (key == "qubit.epsilon" || key == "qubit.omega") {
    kv.erase("qubit.cos_theta");
  }
  kv[key] = format_number(value);
  kv.erase("sweep.axis");
  kv.erase("sweep.values");
  if (cfg.scenario == Scenario::Sweep) kv["scenario"] = "spectrum";
  return build_config(kv);
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Spectrum: return "spectrum";
    case Scenario::Sweep: return "sweep";
    case Scenario::Pnt: return "pnt";
    case Scenario::Current: return "current";
    case Scenario::Relax: return "relax";
  }
  return "unknown";
}

DensityMatrix initial_density(InitialState s, const Model& m) {
  DensityMatrix rho = DensityMatrix::Zero();
  switch (s) {
    case InitialState::Steady: return steady_state(m);
    case InitialState::Excited: rho(0, 0) = 1.0; return rho;
    case InitialState::Ground: rho(1, 1) = 1.0; return rho;
    case InitialState::Mixed: return 0.5 * DensityMatrix::Identity();
    case InitialState::DotA: rho(0, 0) = 1.0; break;
    case InitialState::DotB: rho(1, 1) = 1.0; break;
    case InitialState::Superposition: rho.setConstant(0.5); break;
  }
  // The last three are given in the local {|a>, |b>} basis.
  return to_eigenbasis(m.basis, rho);
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace qpcnoise
