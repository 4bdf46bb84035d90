#include "modecluster/matrix.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace modecluster {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DataMatrix: need at least 1 row and 1 column");
  }
}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DataMatrix: need at least 1 row and 1 column");
  }
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("DataMatrix: value count does not match shape");
  }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("DataMatrix: need at least 1 row and 1 column");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("DataMatrix: row " + std::to_string(r) +
                                  " has inconsistent length");
    }
    values.insert(values.end(), rows[r].begin(), rows[r].end());
  }
  return DataMatrix(rows.size(), cols, std::move(values));
}

void DataMatrix::check_finite() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!std::isfinite((*this)(r, c))) {
        throw std::invalid_argument("DataMatrix: non-finite entry at row " +
                                    std::to_string(r) + ", column " +
                                    std::to_string(c));
      }
    }
  }
}

void Labels::validate() const {
  if (k_count < 1) {
    throw std::invalid_argument("Labels: k_count must be >= 1");
  }
  for (std::size_t n = 0; n < assignment.size(); ++n) {
    if (assignment[n] < 0 || assignment[n] >= k_count) {
      throw std::invalid_argument("Labels: entry " + std::to_string(n) +
                                  " is outside [0, " +
                                  std::to_string(k_count) + ")");
    }
  }
}

std::vector<std::size_t> Labels::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_count), 0);
  for (int a : assignment) sizes[static_cast<std::size_t>(a)]++;
  return sizes;
}

double bounding_box_diagonal(const DataMatrix& data) {
  if (data.empty()) {
    throw std::invalid_argument("bounding_box_diagonal: empty matrix");
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < data.rows(); ++r) {
      lo = std::min(lo, data(r, c));
      hi = std::max(hi, data(r, c));
    }
    sum += (hi - lo) * (hi - lo);
  }
  return std::sqrt(sum);
}

}  // namespace modecluster
