#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wl1proj/lcc.hpp"

namespace wl1proj::io {

enum class FileFormat { csv, json };

/// `.json` (any case) selects JSON, everything else CSV.
FileFormat format_from_path(std::string_view path);

/// CSV: numbers separated by commas and/or newlines. JSON: a flat array of
/// numbers. Parsing is locale independent.
std::vector<double> parse_vector(std::string_view text, FileFormat format);

/// CSV: one row per line, comma separated. JSON: array of equal-length arrays.
Matrix parse_matrix(std::string_view text, FileFormat format);

/// Shortest representation that round-trips exactly (at most 17 digits).
std::string format_number(double value);

std::string serialize_vector(const std::vector<double>& values, FileFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

std::vector<double> read_vector(const std::string& path);
Matrix read_matrix(const std::string& path);

}  // namespace wl1proj::io
