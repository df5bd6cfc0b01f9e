#include "report.hpp"

#include <sstream>

namespace tnc::cli {

std::string csv_cell(const json& value) {
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (value.is_null()) return {};
  if (value.is_structured()) return csv_cell(json(value.dump()));
  return value.dump();
}

namespace {

void csv_line(std::ostringstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

std::string render_csv(const Report& report, const json& config) {
  std::ostringstream out;
  out << "# config: " << config.dump() << '\n';
  std::vector<json> rows = report.rows;
  json trailer = json::object();
  if (rows.empty()) {
    rows.push_back(report.fields);
  } else {
    trailer = report.fields;
  }
  std::vector<std::string> header;
  for (const auto& [k, v] : rows.front().items()) header.push_back(k);
  csv_line(out, header);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& k : header) cells.push_back(row.contains(k) ? csv_cell(row[k]) : std::string());
    csv_line(out, cells);
  }
  if (!trailer.empty()) out << "# summary: " << trailer.dump() << '\n';
  return out.str();
}

}  // namespace

std::string render(const Report& report, const json& config, Format format) {
  if (format == Format::csv) return render_csv(report, config);
  json out = json::object();
  out["config"] = config;
  for (const auto& [k, v] : report.fields.items()) out[k] = v;
  if (!report.rows.empty()) out[report.rows_key] = report.rows;
  return out.dump(2) + "\n";
}

}  // namespace tnc::cli
