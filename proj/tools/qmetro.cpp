// qmetro: command-line front end for the metrology sweeps.

#include "qmetro/cli/config.hpp"
#include "qmetro/cli/experiments.hpp"
#include "qmetro/cli/output.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "0.1.0";

void usage(std::ostream& out) {
  out << "usage: qmetro run <experiment> [flags]\n"
         "       qmetro list-experiments\n"
         "       qmetro version\n"
         "run `qmetro run --help` for the flag list\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qmetro::cli;
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    usage(std::cerr);
    return kExitUsage;
  }
  const std::string command = args.front();
  if (command == "version" || command == "--version") {
    std::cout << "qmetro " << kVersion << "\n";
    return kExitOk;
  }
  if (command == "help" || command == "--help" || command == "-h") {
    usage(std::cout);
    return kExitOk;
  }
  if (command == "list-experiments") {
    for (const auto& name : experiment_names())
      std::cout << name << "\t" << experiment_description(*experiment_from_name(name)) << "\n";
    return kExitOk;
  }
  if (command != "run") {
    std::cerr << "qmetro: unknown command '" << command << "'\n";
    usage(std::cerr);
    return kExitUsage;
  }

  SweepConfig config;
  try {
    config = parse_config({args.begin() + 1, args.end()});
  } catch (const ConfigError& e) {
    (e.exit_code == kExitOk ? std::cout : std::cerr) << (e.exit_code == kExitOk ? "" : "qmetro: ") << e.what()
                                                     << "\n";
    return e.exit_code;
  }

  ResultTable table;
  try {
    table = run_sweep(config);
  } catch (const std::exception& e) {
    std::cerr << "qmetro: " << experiment_name(config.experiment) << " failed: " << e.what() << "\n";
    return kExitComputation;
  }

  const std::string summary = summary_line(config, summarize(table));
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      std::cerr << "qmetro: cannot open output file '" << *config.out << "'\n";
      return kExitComputation;
    }
    write_table(file, table, config.format);
    if (!file) {
      std::cerr << "qmetro: write to '" << *config.out << "' failed\n";
      return kExitComputation;
    }
    std::cout << summary << "\n";
  } else {
    write_table(std::cout, table, config.format);
    std::cerr << summary << "\n";
  }
  return kExitOk;
}
