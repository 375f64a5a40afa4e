#pragma once

// Plot-ready tables and their CSV / JSON serializations.
//
// CSV: '#'-prefixed header lines (tool version, schema version, command,
// parameter echo, column list), one row of column names, then data rows with
// ',' delimiters and 12 significant digits.
// JSON: {"config": {...}, "columns": [...], "rows": [[...], ...], "version": "..."}.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qnd::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

struct Table {
  std::string command;
  // Echoed in the header, in insertion order.
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_param(const std::string& key, double value);
  void add_param(const std::string& key, const std::string& value);
  std::size_t column_index(const std::string& name) const;
};

std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write(const Table& table, Format format, std::ostream& out);

// path "-" writes to stdout. Throws IoError when the file cannot be written.
void write_file(const Table& table, Format format, const std::string& path);

}  // namespace qnd::cli
