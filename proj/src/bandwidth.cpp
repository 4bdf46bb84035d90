#include "modecluster/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "modecluster/parallel.hpp"

namespace modecluster {

double knn_avg_bandwidth(const DataMatrix& data, int k) {
  const std::size_t n = data.rows();
  if (n < 2) {
    throw std::invalid_argument("knn_avg_bandwidth: need at least 2 points");
  }
  if (k < 1 || static_cast<std::size_t>(k) > n - 1) {
    throw std::invalid_argument(
        "knn_avg_bandwidth: k must be in [1, N-1]");
  }

  std::vector<double> kth(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> d2;
    d2.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      d2.push_back(squared_distance(data.row(i), data.row(j)));
    }
    auto nth = d2.begin() + (k - 1);
    std::nth_element(d2.begin(), nth, d2.end());
    kth[i] = std::sqrt(*nth);
  });

  double sum = 0.0;
  for (double v : kth) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (mean <= 0.0) {
    throw std::runtime_error("knn_avg_bandwidth: degenerate dataset");
  }
  return mean;
}

}  // namespace modecluster
