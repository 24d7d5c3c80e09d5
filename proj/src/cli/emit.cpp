#include "vdw/cli/emit.hpp"

#include <cmath>
#include <cstdio>
#include "json.hpp"

namespace vdw::cli {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void write_csv(std::ostream& out, const RunConfig& cfg, const Table& table) {
  for (const auto& [key, value] : cfg.resolved) out << "# " << key << " = " << value << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    out << (j ? "," : "") << table.columns[j];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const RunConfig& cfg, const Table& table) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : cfg.resolved) doc["config"][key] = value;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[table.columns[j]] = number_or_null(row[j]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void write(std::ostream& out, Format format, const RunConfig& cfg, const Table& table) {
  if (format == Format::json) {
    write_json(out, cfg, table);
  } else {
    write_csv(out, cfg, table);
  }
}

}  // namespace vdw::cli
