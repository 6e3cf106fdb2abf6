#pragma once

#include "qmetro/cli/experiments.hpp"

#include <ostream>
#include <string>

namespace qmetro::cli {

// Doubles are written with 17 significant digits; non-finite values as
// inf, -inf or nan.  Null cells are empty in CSV and null in JSON.
std::string format_double(double x);
void write_csv(std::ostream& out, const ResultTable& table);
// An array of objects keyed by column name; non-finite numbers become strings.
void write_json(std::ostream& out, const ResultTable& table);
void write_table(std::ostream& out, const ResultTable& table, Format format);

}  // namespace qmetro::cli
