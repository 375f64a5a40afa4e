#include "qnd/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qnd/error.hpp"

namespace qnd::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw InvalidParam("unknown output format '" + name + "' (expected csv or json)");
}

void Table::add_param(const std::string& key, double value) {
  params.emplace_back(key, format_number(value));
}

void Table::add_param(const std::string& key, const std::string& value) {
  params.emplace_back(key, value);
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw InvalidParam("no column named '" + name + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  out << "# qnd " << kVersion << " schema " << kSchemaVersion << '\n';
  out << "# command: " << table.command << '\n';
  if (!table.params.empty()) {
    out << "# params:";
    for (const auto& [key, value] : table.params) out << ' ' << key << '=' << value;
    out << '\n';
  }
  out << "# columns: " << table.columns.size() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config;
  config["command"] = table.command;
  config["schema"] = kSchemaVersion;
  for (const auto& [key, value] : table.params) config[key] = value;
  doc["config"] = config;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["version"] = kVersion;
  out << doc.dump(1) << '\n';
}

void write(const Table& table, Format format, std::ostream& out) {
  if (format == Format::Csv)
    write_csv(table, out);
  else
    write_json(table, out);
}

void write_file(const Table& table, Format format, const std::string& path) {
  if (path == "-") {
    write(table, format, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(table, format, file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace qnd::cli
