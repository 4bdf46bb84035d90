#pragma once

// Test-only oracles. Everything here recomputes expected values by a route
// independent of the library code under test: direct exponential sums for
// the kde, pair counting for ARI, joint-distribution entropies for NMI, and
// exhaustive assignment enumeration for the K-means optimum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "modecluster/matrix.hpp"
#include "modecluster/rng.hpp"

namespace mctest {

// (1/N) sum_n exp(-||(x - x_n)/sigma||^2 / 2), naive sum.
inline double naive_kde(const modecluster::DataMatrix& support, double sigma,
                        const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < support.rows(); ++i) {
    double d2 = 0.0;
    for (std::size_t d = 0; d < support.cols(); ++d) {
      const double diff = (x[d] - support(i, d)) / sigma;
      d2 += diff * diff;
    }
    s += std::exp(-0.5 * d2);
  }
  return s / static_cast<double>(support.rows());
}

// argmax of the naive kde over a regular grid spanning [lo, hi] per
// dimension with the given step (1D or 2D supports).
inline std::vector<double> grid_argmax(const modecluster::DataMatrix& support,
                                       double sigma,
                                       const std::vector<double>& lo,
                                       const std::vector<double>& hi,
                                       double step) {
  std::vector<double> best;
  double best_val = -1.0;
  if (lo.size() == 1) {
    for (double x = lo[0]; x <= hi[0] + 0.5 * step; x += step) {
      const double v = naive_kde(support, sigma, {x});
      if (v > best_val) {
        best_val = v;
        best = {x};
      }
    }
  } else {
    for (double x = lo[0]; x <= hi[0] + 0.5 * step; x += step) {
      for (double y = lo[1]; y <= hi[1] + 0.5 * step; y += step) {
        const double v = naive_kde(support, sigma, {x, y});
        if (v > best_val) {
          best_val = v;
          best = {x, y};
        }
      }
    }
  }
  return best;
}

// Hubert-Arabie ARI from the four pair-agreement counts.
inline double pair_counting_ari(const std::vector<int>& a,
                                const std::vector<int>& b) {
  double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool same_a = a[i] == a[j];
      const bool same_b = b[i] == b[j];
      if (same_a && same_b) n11 += 1;
      else if (same_a && !same_b) n10 += 1;
      else if (!same_a && same_b) n01 += 1;
      else n00 += 1;
    }
  }
  const double num = 2.0 * (n11 * n00 - n10 * n01);
  const double den = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
  if (den == 0.0) {
    // Both partitions agree on every pair.
    return (n10 == 0 && n01 == 0) ? 1.0 : 0.0;
  }
  return num / den;
}

// NMI from joint counts, natural log, arithmetic-mean normalization.
inline double entropy_nmi(const std::vector<int>& a, const std::vector<int>& b) {
  const int ka = 1 + *std::max_element(a.begin(), a.end());
  const int kb = 1 + *std::max_element(b.begin(), b.end());
  std::vector<std::vector<long>> joint(ka, std::vector<long>(kb, 0));
  for (std::size_t i = 0; i < a.size(); ++i) joint[a[i]][b[i]] += 1;
  std::vector<long> ca(ka, 0), cb(kb, 0);
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      ca[i] += joint[i][j];
      cb[j] += joint[i][j];
    }
  }
  const double n = static_cast<double>(a.size());
  double ha = 0.0, hb = 0.0, mi = 0.0;
  for (int i = 0; i < ka; ++i) {
    if (ca[i] > 0) ha -= (ca[i] / n) * std::log(ca[i] / n);
  }
  for (int j = 0; j < kb; ++j) {
    if (cb[j] > 0) hb -= (cb[j] / n) * std::log(cb[j] / n);
  }
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      if (joint[i][j] > 0) {
        mi += (joint[i][j] / n) *
              std::log((joint[i][j] / n) / ((ca[i] / n) * (cb[j] / n)));
      }
    }
  }
  if (ha + hb == 0.0) return 1.0;
  if (mi <= 0.0) return 0.0;
  return std::min(mi / (0.5 * (ha + hb)), 1.0);
}

// Global K-means optimum by enumerating all K^N assignments; centroids are
// the per-cluster means (optimal for any fixed assignment).
inline double exhaustive_kmeans_optimum(const modecluster::DataMatrix& data,
                                        int k) {
  const std::size_t n = data.rows();
  const std::size_t dim = data.cols();
  std::vector<int> assign(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<double> sums(static_cast<std::size_t>(k) * dim, 0.0);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(assign[i]);
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += data(i, d);
      counts[c]++;
    }
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(assign[i]);
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = data(i, d) - sums[c * dim + d] / counts[c];
        e += diff * diff;
      }
    }
    best = std::min(best, e);
    // next assignment in base k
    std::size_t pos = 0;
    while (pos < n && ++assign[pos] == k) {
      assign[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return best;
}

// Random well-scaled blob dataset for property tests.
struct RandomDataset {
  modecluster::DataMatrix data;
  modecluster::Labels labels;
  int k = 0;
};

inline RandomDataset random_blobs(std::uint64_t seed, std::size_t max_n,
                                  std::size_t max_d, int max_k) {
  modecluster::Rng rng(seed);
  const std::size_t dim = 1 + rng.next_u64() % max_d;
  const int k = 1 + static_cast<int>(rng.next_u64() % max_k);
  const std::size_t n =
      std::max<std::size_t>(static_cast<std::size_t>(k) * 2,
                            max_n / 2 + rng.next_u64() % (max_n / 2));
  modecluster::DataMatrix data(n, dim);
  modecluster::Labels labels{std::vector<int>(n, 0), k};
  std::vector<double> centers(static_cast<std::size_t>(k) * dim);
  for (auto& c : centers) c = rng.uniform(-10.0, 10.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(rng.next_u64() % k);
    labels.assignment[i] = c;
    const double spread = 0.5 + 0.1 * c;
    for (std::size_t d = 0; d < dim; ++d) {
      data(i, d) = centers[static_cast<std::size_t>(c) * dim + d] +
                   spread * rng.normal();
    }
  }
  return {std::move(data), std::move(labels), k};
}

}  // namespace mctest
