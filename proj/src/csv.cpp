#include "modecluster/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

namespace modecluster {

namespace {

std::runtime_error parse_error(const std::filesystem::path& path,
                               std::size_t line, const std::string& what) {
  return std::runtime_error(path.string() + ": row " + std::to_string(line) +
                            ": " + what);
}

// Splits on commas; an empty line yields one empty field.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

DataMatrix load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  std::size_t lineno = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (line.empty() && in.peek() == EOF) break;  // trailing newline
    const auto fields = split_fields(line);
    if (cols == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw parse_error(path, lineno,
                        "expected " + std::to_string(cols) + " columns, got " +
                            std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string& f = fields[c];
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw parse_error(path, lineno,
                          "column " + std::to_string(c + 1) +
                              ": cannot parse '" + f + "' as a real number");
      }
      if (!std::isfinite(v)) {
        throw parse_error(path, lineno,
                          "column " + std::to_string(c + 1) +
                              ": non-finite value '" + f + "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) {
    throw std::runtime_error(path.string() + ": empty dataset");
  }
  return DataMatrix(rows, cols, std::move(values));
}

void save_csv(const DataMatrix& data, const std::filesystem::path& path) {
  if (data.empty()) {
    throw std::runtime_error("save_csv: empty dataset rejected");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  char buf[64];
  for (std::size_t r = 0; r < data.rows(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < data.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", data(r, c));
      if (c > 0) line += ',';
      line += buf;
    }
    line += '\n';
    out << line;
  }
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

Labels load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  Labels labels;
  std::string line;
  std::size_t lineno = 0;
  int max_label = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == EOF) break;
    char* end = nullptr;
    const long v = std::strtol(line.c_str(), &end, 10);
    if (line.empty() || end != line.c_str() + line.size() || v < 0) {
      throw parse_error(path, lineno,
                        "cannot parse '" + line + "' as a cluster index");
    }
    labels.assignment.push_back(static_cast<int>(v));
    max_label = std::max(max_label, static_cast<int>(v));
  }
  if (labels.assignment.empty()) {
    throw std::runtime_error(path.string() + ": empty labels file");
  }
  labels.k_count = max_label + 1;
  return labels;
}

void save_labels(const Labels& labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  for (int a : labels.assignment) out << a << '\n';
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

void save_centroid_path(const std::vector<double>& sigmas,
                        const std::vector<Centroids>& path,
                        const std::filesystem::path& out_path) {
  if (sigmas.size() != path.size()) {
    throw std::invalid_argument("save_centroid_path: one snapshot per sigma");
  }
  std::ofstream out(out_path);
  if (!out) {
    throw std::runtime_error("cannot write " + out_path.string());
  }
  const std::size_t dim = path.empty() ? 0 : path.front().cols();
  out << "sigma,cluster";
  for (std::size_t d = 0; d < dim; ++d) out << ",dim_" << d;
  out << '\n';
  char buf[64];
  for (std::size_t t = 0; t < path.size(); ++t) {
    for (std::size_t c = 0; c < path[t].rows(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", sigmas[t]);
      out << buf << ',' << c;
      for (std::size_t d = 0; d < dim; ++d) {
        std::snprintf(buf, sizeof(buf), "%.17g", path[t](c, d));
        out << ',' << buf;
      }
      out << '\n';
    }
  }
  if (!out) {
    throw std::runtime_error("write failed for " + out_path.string());
  }
}

}  // namespace modecluster
