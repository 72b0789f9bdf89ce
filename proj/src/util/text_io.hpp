#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

// Shortest round-trippable-enough decimal form used in every artifact.
std::string format_double(double v, int precision = 12);

std::string to_hex(std::uint64_t v);
std::uint64_t fnv1a64(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);

// Minimal RFC-4180 style table. Lines beginning with '#' before the header are
// metadata entries of the form "# key=value".
struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws DataError when absent.
  std::size_t column(std::string_view name) const;
};

std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);
CsvTable parse_csv(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

}  // namespace debatenet
