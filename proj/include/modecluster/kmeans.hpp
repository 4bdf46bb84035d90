#pragma once

#include <cstdint>
#include <vector>

#include "modecluster/matrix.hpp"

namespace modecluster {

struct KMeansConfig {
  int k = 2;
  int restarts = 20;
  int max_iters = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  Centroids centroids;
  Labels labels;
  double objective = 0.0;  // E of eq. (1): sum of squared distances
  int iters = 0;
  std::vector<double> objective_trace;       // per iteration, nonincreasing
  std::vector<double> restart_objectives;    // final E of every restart
  int best_restart = 0;
  long empty_cluster_repairs = 0;            // over the best restart
};

// Sum over points of the squared Euclidean distance to the assigned centroid.
double kmeans_objective(const DataMatrix& data, const Labels& labels,
                        const Centroids& centroids);

// Nearest centroid in Euclidean distance; ties go to the lowest cluster
// index. Independent of any kernel bandwidth.
Labels assign_nearest(const DataMatrix& data, const Centroids& centroids);

// Lloyd's algorithm. Each restart initializes centroids as k distinct data
// points sampled without replacement, alternates assignment and per-cluster
// mean updates until the labels repeat, and the restart with minimal E wins
// (ties keep the lowest restart index). Empty clusters are re-seeded at the
// point farthest from its current centroid. Restart r draws from its own
// stream seeded by the r-th word of a master stream, so results are
// bit-identical whether restarts run sequentially or concurrently.
KMeansResult kmeans_run(const DataMatrix& data, const KMeansConfig& cfg);

}  // namespace modecluster
