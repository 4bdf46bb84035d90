#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace modecluster {

// Row-major N x D matrix of finite reals. Row n is the point x_n. Row order
// is significant and preserved by I/O round trips. Treated as immutable once
// filled; safe to share read-only across threads.
class DataMatrix {
 public:
  DataMatrix() = default;
  DataMatrix(std::size_t rows, std::size_t cols);
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {values_.data() + r * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

  // Throws std::invalid_argument naming the first non-finite entry.
  void check_finite() const;

  bool operator==(const DataMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Cluster representatives, one per row.
using Centroids = DataMatrix;

// Hard assignment of each point to exactly one of k_count clusters.
struct Labels {
  std::vector<int> assignment;
  int k_count = 0;

  std::size_t size() const { return assignment.size(); }
  // Throws std::invalid_argument if any entry is outside [0, k_count).
  void validate() const;
  std::vector<std::size_t> cluster_sizes() const;

  bool operator==(const Labels&) const = default;
};

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double euclidean_distance(std::span<const double> a,
                                 std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

// Length of the axis-aligned bounding-box diagonal. Used as the data-scale
// unit for default bandwidths.
double bounding_box_diagonal(const DataMatrix& data);

}  // namespace modecluster
