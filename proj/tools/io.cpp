#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wl1proj::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') {
    token.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw InvalidInput("cannot parse number '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double json_number(const nlohmann::json& value) {
  if (!value.is_number()) {
    throw InvalidInput("expected a number, got " + value.dump());
  }
  return value.get<double>();
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

FileFormat format_from_path(std::string_view path) {
  if (path.size() >= 5) {
    std::string ext(path.substr(path.size() - 5));
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".json") return FileFormat::json;
  }
  return FileFormat::csv;
}

std::vector<double> parse_vector(std::string_view text, FileFormat format) {
  std::vector<double> values;
  if (format == FileFormat::json) {
    const nlohmann::json doc = parse_json(text);
    if (!doc.is_array()) {
      throw InvalidInput("expected a JSON array of numbers");
    }
    for (const auto& item : doc) values.push_back(json_number(item));
  } else {
    for (std::string_view line : split(text, '\n')) {
      line = trim(line);
      if (line.empty()) continue;
      for (std::string_view token : split(line, ',')) {
        values.push_back(parse_number(token));
      }
    }
  }
  if (values.empty()) {
    throw InvalidInput("vector file contains no values");
  }
  return values;
}

Matrix parse_matrix(std::string_view text, FileFormat format) {
  std::vector<std::vector<double>> rows;
  if (format == FileFormat::json) {
    const nlohmann::json doc = parse_json(text);
    if (!doc.is_array()) {
      throw InvalidInput("expected a JSON array of rows");
    }
    for (const auto& row : doc) {
      if (!row.is_array()) throw InvalidInput("matrix row is not an array");
      auto& out = rows.emplace_back();
      for (const auto& item : row) out.push_back(json_number(item));
    }
  } else {
    for (std::string_view line : split(text, '\n')) {
      line = trim(line);
      if (line.empty()) continue;
      auto& out = rows.emplace_back();
      for (std::string_view token : split(line, ',')) out.push_back(parse_number(token));
    }
  }
  if (rows.empty() || rows.front().empty()) {
    throw InvalidInput("matrix file contains no values");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InvalidInput("matrix row " + std::to_string(r) + " has " +
                         std::to_string(rows[r].size()) + " entries, expected " +
                         std::to_string(cols));
    }
    values.insert(values.end(), rows[r].begin(), rows[r].end());
  }
  require_finite(values, "matrix");
  return Matrix(rows.size(), cols, std::move(values));
}

std::string format_number(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string serialize_vector(const std::vector<double>& values, FileFormat format) {
  if (format == FileFormat::json) {
    return nlohmann::json(values).dump() + "\n";
  }
  std::string out;
  for (double v : values) {
    out += format_number(v);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInput("cannot write '" + path + "'");
  }
  out << contents;
}

std::vector<double> read_vector(const std::string& path) {
  return parse_vector(read_file(path), format_from_path(path));
}

Matrix read_matrix(const std::string& path) {
  return parse_matrix(read_file(path), format_from_path(path));
}

}  // namespace wl1proj::io
