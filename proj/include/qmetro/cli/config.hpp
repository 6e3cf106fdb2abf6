#pragma once

// Sweep configuration for the qmetro command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmetro::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,        // bad flag, bad value, unknown experiment
  kExitComputation = 3,  // a module threw while running the sweep
  kExitConfigFile = 4,   // unreadable or malformed config file, unknown key
  kExitEmptyGrid = 5,
};

struct ConfigError : std::runtime_error {
  ConfigError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
  int exit_code;
};

enum class Experiment {
  MzSingle,
  RamseyCss,
  RamseySss,
  NoonQfi,
  EcsQfi,
  TwinFockParity,
  BjjGround,
  OatSqueeze,
  MonteCarlo,
};

enum class Format { Csv, Json };

const std::vector<std::string>& experiment_names();
const char* experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string& name);

struct SweepConfig {
  Experiment experiment = Experiment::MzSingle;
  std::vector<int> n;
  std::vector<double> phi;
  std::vector<double> alpha;
  std::vector<double> t;
  double chi = 1.0;
  double omega = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double ec = 0.0;
  double jtun = 1.0;
  long long v = 1;
  std::uint64_t seed = 42;
  int trials = 200;
  std::optional<std::string> out;  // empty: standard output
  Format format = Format::Csv;
};

// Grid syntax: "start:stop:count" (count points, both ends included) or a
// comma list.  Numbers may use pi, e.g. "pi", "pi/2", "3*pi/4", "-pi".
std::vector<double> parse_grid(const std::string& text);
double parse_angle(const std::string& token);
std::vector<int> parse_int_list(const std::string& text);

using KeyValues = std::map<std::string, std::string>;

// Flat "key = value" lines; '#' starts a comment.  Keys mirror the long flag
// names without dashes.  Throws ConfigError(kExitConfigFile).
KeyValues read_config_file(const std::string& path);

// Arguments after "run": the experiment name and flags.  Flags override
// values from --config.  QMETRO_OUTPUT_DIR, when set and --out is absent,
// sends output to <dir>/<experiment>.<format>.
SweepConfig parse_config(const std::vector<std::string>& run_args);

// Applies key/value settings (from a file or from flags) on top of the
// experiment defaults.
SweepConfig build_config(Experiment experiment, const KeyValues& values);

}  // namespace qmetro::cli
