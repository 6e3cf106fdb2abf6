#include "qmetro/cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qmetro::cli {

namespace {

const std::vector<std::string> kKeys = {"n",  "phi",  "alpha", "t",    "chi",    "omega",  "delta", "gamma",
                                        "ec", "jtun", "v",     "seed", "trials", "format", "out",   "experiment"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

double parse_number(const std::string& token) {
  const std::string s = trim(token);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(kExitUsage, "not a number: '" + token + "'");
  }
  if (used != s.size()) throw ConfigError(kExitUsage, "not a number: '" + token + "'");
  return value;
}

long long parse_integer(const std::string& token) {
  const std::string s = trim(token);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(kExitUsage, "not an integer: '" + token + "'");
  }
  if (used != s.size()) throw ConfigError(kExitUsage, "not an integer: '" + token + "'");
  return value;
}

struct Defaults {
  const char* n;
  const char* phi;
  const char* alpha;
  const char* t;
  double ec;
  double jtun;
  long long v;
};

Defaults defaults_for(Experiment e) {
  switch (e) {
    case Experiment::MzSingle: return {"1", "0:pi:101", "1", "0", 0.0, 1.0, 1};
    case Experiment::RamseyCss: return {"100", "0:pi:101", "1", "0", 0.0, 1.0, 1};
    case Experiment::RamseySss: return {"40", "pi/2", "1", "0.05", 0.0, 1.0, 1};
    case Experiment::NoonQfi: return {"2,10,50", "0.01", "1", "0", 0.0, 1.0, 1};
    case Experiment::EcsQfi: return {"2", "0.1", "0.5,1,2", "0", 0.0, 1.0, 1};
    case Experiment::TwinFockParity: return {"3,5,10", "0.001", "1", "0", 0.0, 1.0, 1};
    case Experiment::BjjGround: return {"20", "0", "1", "0", 0.01, 1.0, 1};
    case Experiment::OatSqueeze: return {"40", "pi/2", "1", "0:0.1:11", 0.0, 1.0, 1};
    case Experiment::MonteCarlo: return {"1", "1", "1", "0", 0.0, 1.0, 1000};
  }
  return {"1", "0", "1", "0", 0.0, 1.0, 1};
}

std::vector<double> require_grid(const std::string& key, const std::string& text) {
  std::vector<double> grid = parse_grid(text);
  if (grid.empty()) throw ConfigError(kExitEmptyGrid, "empty grid for '" + key + "': '" + text + "'");
  return grid;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"mz-single",       "ramsey-css", "ramsey-sss",
                                                 "noon-qfi",        "ecs-qfi",    "twinfock-parity",
                                                 "bjj-ground",      "oat-squeeze", "monte-carlo"};
  return names;
}

const char* experiment_name(Experiment e) { return experiment_names()[static_cast<std::size_t>(e)].c_str(); }

std::optional<Experiment> experiment_from_name(const std::string& name) {
  const auto& names = experiment_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Experiment>(it - names.begin());
}

double parse_angle(const std::string& token) {
  std::string s = trim(token);
  if (s.empty()) throw ConfigError(kExitUsage, "empty number");
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_number(s);

  double sign = 1.0;
  std::string coef = trim(s.substr(0, pos));
  if (!coef.empty() && coef.front() == '-') {
    sign = -1.0;
    coef = trim(coef.substr(1));
  } else if (!coef.empty() && coef.front() == '+') {
    coef = trim(coef.substr(1));
  }
  double value = M_PI;
  if (!coef.empty()) {
    if (coef.back() != '*') throw ConfigError(kExitUsage, "cannot parse angle '" + token + "'");
    value *= parse_number(coef.substr(0, coef.size() - 1));
  }
  const std::string rest = trim(s.substr(pos + 2));
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError(kExitUsage, "cannot parse angle '" + token + "'");
    const double den = parse_number(rest.substr(1));
    if (den == 0.0) throw ConfigError(kExitUsage, "division by zero in '" + token + "'");
    value /= den;
  }
  return sign * value;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) return {};
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError(kExitUsage, "grid must be start:stop:count, got '" + text + "'");
    const double start = parse_angle(parts[0]);
    const double stop = parse_angle(parts[1]);
    const long long count = parse_integer(parts[2]);
    if (count < 0) throw ConfigError(kExitUsage, "negative grid count in '" + text + "'");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
      if (count == 1) grid.push_back(start);
      else if (i == count - 1) grid.push_back(stop);
      else grid.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
    }
    return grid;
  }
  std::vector<double> grid;
  for (const auto& item : split(s, ',')) grid.push_back(parse_angle(item));
  return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const std::string s = trim(text);
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) {
    const long long v = parse_integer(item);
    if (v < 1 || v > 1000000) throw ConfigError(kExitUsage, "N values must be positive, got '" + item + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kExitConfigFile, "cannot read config file '" + path + "'");
  KeyValues values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(kExitConfigFile, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw ConfigError(kExitConfigFile, where + ": unknown key '" + key + "'");
    if (values.count(key)) throw ConfigError(kExitConfigFile, where + ": duplicate key '" + key + "'");
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

SweepConfig build_config(Experiment experiment, const KeyValues& values) {
  const Defaults d = defaults_for(experiment);
  const auto get = [&](const std::string& key, const char* fallback) -> std::string {
    const auto it = values.find(key);
    return it == values.end() ? std::string(fallback) : it->second;
  };
  const auto has = [&](const std::string& key) { return values.count(key) > 0; };

  SweepConfig c;
  c.experiment = experiment;
  c.n = parse_int_list(get("n", d.n));
  if (c.n.empty()) throw ConfigError(kExitEmptyGrid, "empty N list");
  c.phi = require_grid("phi", get("phi", d.phi));
  c.alpha = require_grid("alpha", get("alpha", d.alpha));
  c.t = require_grid("t", get("t", d.t));
  c.chi = has("chi") ? parse_angle(values.at("chi")) : 1.0;
  c.omega = has("omega") ? parse_angle(values.at("omega")) : 0.0;
  c.delta = has("delta") ? parse_angle(values.at("delta")) : 0.0;
  c.gamma = has("gamma") ? parse_angle(values.at("gamma")) : 0.0;
  c.ec = has("ec") ? parse_angle(values.at("ec")) : d.ec;
  c.jtun = has("jtun") ? parse_angle(values.at("jtun")) : d.jtun;
  c.v = has("v") ? parse_integer(values.at("v")) : d.v;
  if (c.v < 1) throw ConfigError(kExitUsage, "repetitions v must be >= 1");
  if (has("seed")) {
    const std::string s = trim(values.at("seed"));
    std::size_t used = 0;
    try {
      if (s.empty() || s.front() == '-') throw std::invalid_argument(s);
      c.seed = std::stoull(s, &used);
    } catch (const std::exception&) {
      throw ConfigError(kExitUsage, "seed must be a non-negative integer, got '" + s + "'");
    }
    if (used != s.size()) throw ConfigError(kExitUsage, "seed must be a non-negative integer, got '" + s + "'");
  }
  if (has("trials")) {
    const long long trials = parse_integer(values.at("trials"));
    if (trials < 1 || trials > 100000000) throw ConfigError(kExitUsage, "trials must be >= 1");
    c.trials = static_cast<int>(trials);
  }
  if (has("out") && !trim(values.at("out")).empty()) c.out = trim(values.at("out"));
  if (has("format")) {
    const std::string f = trim(values.at("format"));
    if (f == "csv") {
      c.format = Format::Csv;
    } else if (f == "json") {
      c.format = Format::Json;
    } else {
      throw ConfigError(kExitUsage, "format must be csv or json, got '" + f + "'");
    }
  } else if (c.out && c.out->size() >= 5 && c.out->substr(c.out->size() - 5) == ".json") {
    c.format = Format::Json;
  }
  return c;
}

SweepConfig parse_config(const std::vector<std::string>& run_args) {
  CLI::App app{"Run a named experiment sweep", "qmetro run"};
  std::string experiment;
  std::string config_path;
  app.add_option("experiment", experiment, "Experiment name (see list-experiments)");
  app.add_option("--config", config_path, "Flat key = value file; flags override it");

  KeyValues flags;
  std::map<std::string, std::string> raw;
  const std::vector<std::pair<std::string, std::string>> options = {
      {"n", "Particle numbers, comma list"},
      {"phi", "Phase grid, start:stop:count or comma list"},
      {"alpha", "ECS amplitudes, grid or list"},
      {"t", "Evolution times, grid or list"},
      {"chi", "Twisting strength"},
      {"omega", "Linear coupling"},
      {"delta", "Detuning or imbalance"},
      {"gamma", "Coupling phase"},
      {"ec", "Charging energy"},
      {"jtun", "Tunneling"},
      {"v", "Repetitions"},
      {"seed", "Monte-Carlo seed"},
      {"trials", "Monte-Carlo trials"},
      {"out", "Output file"},
      {"format", "csv or json"},
  };
  for (const auto& [key, help] : options) app.add_option("--" + key, raw[key], help);

  std::vector<std::string> reversed(run_args.rbegin(), run_args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw ConfigError(kExitOk, app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(kExitUsage, e.what());
  }
  for (const auto& [key, help] : options)
    if (app.get_option("--" + key)->count() > 0) flags[key] = raw[key];

  KeyValues merged;
  std::optional<Experiment> file_experiment;
  if (!config_path.empty()) {
    merged = read_config_file(config_path);
    if (merged.count("experiment")) {
      file_experiment = experiment_from_name(merged.at("experiment"));
      if (!file_experiment)
        throw ConfigError(kExitConfigFile, config_path + ": unknown experiment '" + merged.at("experiment") + "'");
      merged.erase("experiment");
    }
  }

  Experiment chosen{};
  if (!experiment.empty()) {
    const auto e = experiment_from_name(experiment);
    if (!e) throw ConfigError(kExitUsage, "unknown experiment '" + experiment + "' (try list-experiments)");
    chosen = *e;
  } else if (file_experiment) {
    chosen = *file_experiment;
  } else {
    throw ConfigError(kExitUsage, "no experiment given (try list-experiments)");
  }

  if (!config_path.empty()) {
    try {
      build_config(chosen, merged);
    } catch (const ConfigError& e) {
      if (e.exit_code == kExitEmptyGrid) throw;
      throw ConfigError(kExitConfigFile, config_path + ": " + e.what());
    }
  }
  for (const auto& [key, value] : flags) merged[key] = value;
  SweepConfig config = build_config(chosen, merged);

  if (!config.out) {
    if (const char* dir = std::getenv("QMETRO_OUTPUT_DIR"); dir && *dir) {
      config.out = std::string(dir) + "/" + experiment_name(chosen) +
                   (config.format == Format::Json ? ".json" : ".csv");
    }
  }
  return config;
}

}  // namespace qmetro::cli
