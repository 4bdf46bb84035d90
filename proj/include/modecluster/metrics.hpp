#pragma once

#include <vector>

#include "modecluster/matrix.hpp"

namespace modecluster {

// Co-occurrence counts between two labelings of the same points.
struct Contingency {
  std::vector<std::vector<long>> counts;  // R x C
  std::vector<long> row_sums;
  std::vector<long> col_sums;
  long total = 0;
};

Contingency contingency(const Labels& a, const Labels& b);

// Chance-corrected pair-counting agreement in [-1, 1]. Identical partitions
// give 1 (including degenerate single-cluster ones); when the chance
// correction is exact (M = E) and the partitions differ, the value is 0.
double adjusted_rand_index(const Labels& a, const Labels& b);

// I(a;b) normalized by the arithmetic mean of the entropies, natural log,
// in [0, 1]. Identical partitions give 1 (including the single-cluster
// case); zero mutual information gives 0.
double normalized_mutual_information(const Labels& a, const Labels& b);

}  // namespace modecluster
