#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace tnc::cli {

using json = nlohmann::ordered_json;

enum class Format { json, csv };

/// What a command produced. `rows` is the table emitted as CSV body; the
/// scalar `fields` land in the JSON object and in the CSV trailer.
struct Report {
  json fields = json::object();
  std::vector<json> rows;
  std::string rows_key = "rows";
  std::string summary;
};

std::string render(const Report& report, const json& config, Format format);

/// Shortest round-trip text for a JSON scalar, unquoted strings.
std::string csv_cell(const json& value);

}  // namespace tnc::cli
