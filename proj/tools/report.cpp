#include "report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace rumorlab::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string csv_field(const Json& cell) {
  std::string text;
  if (cell.is_null()) return text;
  if (cell.is_string()) {
    text = cell.get<std::string>();
  } else if (cell.is_number_float()) {
    text = format_double(cell.get<double>());
  } else {
    text = cell.dump();
  }
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  }
}

Json Table::to_json() const {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json record = Json::object();
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) record[columns[i]] = row[i];
    out.push_back(std::move(record));
  }
  return out;
}

Json RunManifest::to_json() const {
  Json out = Json::object();
  out["command"] = command;
  out["parameters"] = parameters;
  // A string keeps all 64 bits intact for JSON readers that parse doubles.
  out["seed"] = std::to_string(seed);
  out["version"] = version;
  out["duration_seconds"] = duration_seconds;
  return out;
}

}  // namespace rumorlab::cli
