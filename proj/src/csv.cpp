#include <cmath>
#include <fstream>
#include <sstream>

#include "cure/common/error.hpp"
#include "cure/io/loaders.hpp"

namespace cure::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw FormatError("csv_non_numeric", "line " + std::to_string(line_no) +
                                             ": cannot parse '" + cell + "'");
  }
  while (used < cell.size() &&
         (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t'))
    ++used;
  if (used != cell.size())
    throw FormatError("csv_non_numeric", "line " + std::to_string(line_no) +
                                             ": trailing junk in '" + cell + "'");
  return value;
}

}  // namespace

model::Dataset load_csv(const std::string& path, std::size_t label_column,
                        bool has_header) {
  std::ifstream in(path);
  if (!in) throw FormatError("csv_missing_file", "cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && has_header) continue;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
      row[j] = parse_cell(cells[j], line_no);
    if (width == 0) {
      width = row.size();
      if (width < 2)
        throw FormatError("csv_bad_label_column",
                          "need at least one feature and one label column");
      if (label_column >= width)
        throw FormatError("csv_bad_label_column",
                          "label column " + std::to_string(label_column) +
                              " out of range for width " + std::to_string(width));
    } else if (row.size() != width) {
      throw FormatError("csv_ragged_row",
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " cells, got " +
                            std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("csv_empty", path + ": no data rows");

  model::Dataset out;
  const std::size_t n = rows.size();
  const std::size_t p = width - 1;
  out.features = linalg::Matrix(n, p);
  out.labels.resize(n);
  out.targets.resize(n);
  int max_label = 0;
  bool integral = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t col = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == label_column) continue;
      out.features(i, col++) = rows[i][j];
    }
    const double raw = rows[i][label_column];
    out.targets[i] = raw;
    const double rounded = std::nearbyint(raw);
    if (std::abs(raw - rounded) > 1e-9 || rounded < 0) integral = false;
    out.labels[i] = static_cast<int>(rounded);
    if (integral) max_label = std::max(max_label, out.labels[i]);
  }
  if (integral) {
    out.class_count = static_cast<std::size_t>(max_label) + 1;
    if (out.class_count < 2) out.class_count = 2;
  } else {
    // Non-integer labels: regression targets.
    out.class_count = 1;
    out.labels.clear();
  }
  out.name = "csv";
  out.validate();
  return out;
}

void write_csv(const model::Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("csv_write_failed", "cannot write " + path);
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.feature_dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.features(i, j));
      out << buf << ',';
    }
    if (data.is_regression()) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.targets[i]);
      out << buf << '\n';
    } else {
      out << data.labels[i] << '\n';
    }
  }
}

}  // namespace cure::io
