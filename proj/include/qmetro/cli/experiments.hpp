#pragma once

// Named sweeps behind `qmetro run <experiment>`.  Each experiment has a fixed
// column set; cells that do not apply are null.

#include "qmetro/cli/config.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qmetro::cli {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  // sweep order
};

// Columns shared by every experiment, in output order.
const std::vector<std::string>& base_columns();
std::vector<std::string> experiment_columns(Experiment e);
std::string experiment_description(Experiment e);

ResultTable run_sweep(const SweepConfig& config);

struct SweepSummary {
  bool found = false;  // some row has a finite delta_theta_errorprop
  double min_delta_theta = 0.0;
  Cell argmin_phi;
  Cell argmin_n;
};

SweepSummary summarize(const ResultTable& table);
std::string summary_line(const SweepConfig& config, const SweepSummary& summary);

}  // namespace qmetro::cli
