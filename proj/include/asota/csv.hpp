#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace asota::csv {

/// Comma split with whitespace trimming. No quoting: none of the file
/// schemas carry embedded commas.
std::vector<std::string> split_fields(std::string_view line);

std::string trim(std::string_view s);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long& out);

/// Shortest round-trippable decimal form; locale-independent.
std::string format_double(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a CSV file with a mandatory header row. Throws DataError if the
/// file cannot be opened.
Table read_table(const std::filesystem::path& path);

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

} // namespace asota::csv
