#include "qmetro/cli/output.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace qmetro::cli {

namespace {

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

std::string json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "null";
        else if constexpr (std::is_same_v<T, double>)
          return std::isfinite(v) ? format_double(v) : nlohmann::json(format_double(v)).dump();
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return nlohmann::json(v).dump();
      },
      c);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const ResultTable& table) {
  out << "[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      out << (i ? ", " : "") << nlohmann::json(table.columns[i]).dump() << ": " << json_cell(table.rows[r][i]);
    out << "}";
  }
  out << (table.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(std::ostream& out, const ResultTable& table, Format format) {
  if (format == Format::Json) {
    write_json(out, table);
  } else {
    write_csv(out, table);
  }
}

}  // namespace qmetro::cli
