#pragma once

#include "modecluster/matrix.hpp"

namespace modecluster {

// Mean over all points of the Euclidean distance to the k-th nearest other
// point, by exact all-pairs computation. The usual target-bandwidth rule is
// k = 10. Throws if k is out of [1, N-1], N < 2, or every k-th distance is
// zero (degenerate dataset).
double knn_avg_bandwidth(const DataMatrix& data, int k);

}  // namespace modecluster
