#include "cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cutlab/error.hpp"

namespace cutlab::cli {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_csv(const CsvTable& table) {
  std::string text;
  auto line = [&text](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text += ',';
      text += fields[i];
    }
    text += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return text;
}

namespace {

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace

void emit_csv(const CsvTable& table, const std::string& path) { write_text(render_csv(table), path); }

void emit_summary(const std::vector<std::pair<std::string, std::string>>& entries,
                  const std::string& path) {
  std::string text;
  for (const auto& [k, v] : entries) text += k + "=" + v + "\n";
  write_text(text, path);
}

}  // namespace cutlab::cli
