#pragma once

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rumorlab::cli {

using Json = nlohmann::ordered_json;

/// Rows of typed cells. Strings are written verbatim, numbers in shortest
/// round-trip form, null as an empty field.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  Json to_json() const;
};

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::string version;
  double duration_seconds = 0.0;

  Json to_json() const;
};

/// What a command hands back: the JSON body (merged into the top-level
/// report next to the manifest) and, for tabular output, the CSV table.
struct CommandResult {
  Json body = Json::object();
  std::optional<Table> table;
  std::vector<std::string> warnings;
};

std::string format_double(double value);
std::string csv_field(const Json& cell);
void write_csv(std::ostream& out, const Table& table);

}  // namespace rumorlab::cli
