#pragma once

#include <Eigen/Core>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hcad/types.hpp"

namespace hcad {

struct CsvSchema {
  bool has_header = false;
  char delimiter = ',';
};

namespace detail {

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline double parse_field(std::string_view field, std::size_t row,
                          std::size_t col) {
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ParseError("row " + std::to_string(row) + ", column " +
                     std::to_string(col) + ": not a finite number: '" +
                     std::string(field) + "'");
  }
  return v;
}

}  // namespace detail

/// Reads a numeric CSV into a Dataset; one point per data row, dimensionality
/// = column count. Rows must be rectangular and every field a finite real.
inline Dataset load_csv(const std::string& path, const CsvSchema& schema = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool skip = schema.has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip) {
      skip = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0, col = 0;
    while (true) {
      const std::size_t pos = line.find(schema.delimiter, start);
      const std::string_view field =
          std::string_view(line).substr(start, pos == std::string::npos
                                                   ? std::string::npos
                                                   : pos - start);
      row.push_back(detail::parse_field(field, lineno, col));
      ++col;
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw SchemaError("row " + std::to_string(lineno) + ": expected " +
                        std::to_string(rows.front().size()) +
                        " columns, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }

  Eigen::MatrixXd coords(static_cast<Eigen::Index>(rows.size()),
                         rows.empty() ? 0
                                      : static_cast<Eigen::Index>(
                                            rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      coords(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
  return Dataset(std::move(coords));
}

/// Writes coordinates as CSV, LF line endings, shortest round-trip decimals.
inline void write_csv(const Dataset& data, const std::string& path,
                      char delimiter = ',') {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  for (Eigen::Index r = 0; r < data.size(); ++r) {
    for (Eigen::Index c = 0; c < data.dims(); ++c) {
      if (c > 0) out << delimiter;
      out << detail::format_double(data.coords(r, c));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

/// Writes "index,cluster" rows in point-index order; noise as -1.
inline void write_labels(const ClusterLabeling& labeling,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << "index,cluster\n";
  for (std::size_t i = 0; i < labeling.labels.size(); ++i)
    out << i << ',' << labeling.labels[i] << '\n';
  if (!out) throw IoError("write failed: " + path);
}

/// Reads a labels CSV written by write_labels.
inline ClusterLabeling load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::string line;
  std::getline(in, line);  // header
  ClusterLabeling out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw SchemaError("labels file: missing comma in '" + line + "'");
    out.labels.push_back(std::stoi(line.substr(comma + 1)));
  }
  for (int l : out.labels) out.cluster_count = std::max(out.cluster_count, l);
  return out;
}

}  // namespace hcad
