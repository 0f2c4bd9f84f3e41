#pragma once

// Minimal CSV reader/writer. Fields are plain tokens: no quoting, no embedded commas.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "uamlanes/errors.hpp"

namespace uamlanes::csv {

struct Row {
  int line = 0;  // 1-based line number in the file
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Column position, or throws SchemaError naming the missing column.
  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw SchemaError("missing column '" + std::string(name) + "'");
  }
};

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Table parse(std::istream& in) {
  Table table;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find('"') != std::string::npos) throw SchemaError("line " + std::to_string(lineno) + ": quoted fields are not supported");
    if (!have_header) {
      table.header = split(line);
      have_header = true;
      continue;
    }
    Row row{lineno, split(line)};
    if (row.fields.size() != table.header.size())
      throw SchemaError("line " + std::to_string(lineno) + ": expected " + std::to_string(table.header.size()) +
                        " fields, found " + std::to_string(row.fields.size()));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw SchemaError("CSV input has no header row");
  return table;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse(in);
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw IoError("failed writing " + path);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Appends one line of comma-joined fields.
template <typename... Fields>
void append_row(std::string& out, const Fields&... fields) {
  bool first = true;
  ((out += (first ? "" : ","), out += fields, first = false), ...);
  out += '\n';
}

}  // namespace uamlanes::csv
