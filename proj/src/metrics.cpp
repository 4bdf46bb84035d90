#include "modecluster/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace modecluster {

namespace {

void check_pair(const Labels& a, const Labels& b) {
  if (a.assignment.size() != b.assignment.size()) {
    throw std::invalid_argument("metrics: label vectors differ in length");
  }
  if (a.assignment.empty()) {
    throw std::invalid_argument("metrics: empty labelings");
  }
  a.validate();
  b.validate();
}

double choose2(double n) { return 0.5 * n * (n - 1.0); }

// True when the contingency table is a (partial) permutation matrix, i.e.
// the two labelings induce the same partition.
bool same_partition(const Contingency& t) {
  for (const auto& row : t.counts) {
    int nonzero = 0;
    for (long v : row) nonzero += (v != 0);
    if (nonzero > 1) return false;
  }
  for (std::size_t c = 0; c < t.col_sums.size(); ++c) {
    int nonzero = 0;
    for (const auto& row : t.counts) nonzero += (row[c] != 0);
    if (nonzero > 1) return false;
  }
  return true;
}

}  // namespace

Contingency contingency(const Labels& a, const Labels& b) {
  check_pair(a, b);
  Contingency t;
  const std::size_t r = static_cast<std::size_t>(a.k_count);
  const std::size_t c = static_cast<std::size_t>(b.k_count);
  t.counts.assign(r, std::vector<long>(c, 0));
  t.row_sums.assign(r, 0);
  t.col_sums.assign(c, 0);
  for (std::size_t n = 0; n < a.assignment.size(); ++n) {
    const auto i = static_cast<std::size_t>(a.assignment[n]);
    const auto j = static_cast<std::size_t>(b.assignment[n]);
    t.counts[i][j]++;
    t.row_sums[i]++;
    t.col_sums[j]++;
    t.total++;
  }
  return t;
}

double adjusted_rand_index(const Labels& a, const Labels& b) {
  const Contingency t = contingency(a, b);
  if (t.total < 2) {
    throw std::invalid_argument("adjusted_rand_index: need N >= 2");
  }

  double sum_cells = 0.0;
  for (const auto& row : t.counts) {
    for (long v : row) sum_cells += choose2(static_cast<double>(v));
  }
  double sum_a = 0.0;
  for (long v : t.row_sums) sum_a += choose2(static_cast<double>(v));
  double sum_b = 0.0;
  for (long v : t.col_sums) sum_b += choose2(static_cast<double>(v));

  const double pairs = choose2(static_cast<double>(t.total));
  const double expected = sum_a * sum_b / pairs;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) {
    return same_partition(t) ? 1.0 : 0.0;
  }
  return (sum_cells - expected) / (max_index - expected);
}

double normalized_mutual_information(const Labels& a, const Labels& b) {
  const Contingency t = contingency(a, b);
  const double n = static_cast<double>(t.total);

  double h_a = 0.0;
  for (long v : t.row_sums) {
    if (v > 0) {
      const double p = static_cast<double>(v) / n;
      h_a -= p * std::log(p);
    }
  }
  double h_b = 0.0;
  for (long v : t.col_sums) {
    if (v > 0) {
      const double p = static_cast<double>(v) / n;
      h_b -= p * std::log(p);
    }
  }

  double mi = 0.0;
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
      const long v = t.counts[i][j];
      if (v == 0) continue;
      const double p = static_cast<double>(v) / n;
      const double pa = static_cast<double>(t.row_sums[i]) / n;
      const double pb = static_cast<double>(t.col_sums[j]) / n;
      mi += p * std::log(p / (pa * pb));
    }
  }

  const double denom = 0.5 * (h_a + h_b);
  if (denom == 0.0) {
    // Both partitions put everything in one cluster: identical.
    return 1.0;
  }
  if (mi <= 0.0) return 0.0;
  return std::min(mi / denom, 1.0);
}

}  // namespace modecluster
