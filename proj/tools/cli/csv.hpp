#pragma once

#include <string>
#include <vector>

namespace cutlab::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits, so values survive a text round trip exactly.
std::string format_double(double x);

std::string render_csv(const CsvTable& table);

/// Writes the table to `path`, or to standard output when `path` is empty.
/// Throws IoError when the file cannot be written.
void emit_csv(const CsvTable& table, const std::string& path);

/// Flat key=value lines.
void emit_summary(const std::vector<std::pair<std::string, std::string>>& entries,
                  const std::string& path);

}  // namespace cutlab::cli
