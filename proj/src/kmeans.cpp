#include "modecluster/kmeans.hpp"

#include <limits>
#include <stdexcept>

#include "modecluster/parallel.hpp"
#include "modecluster/rng.hpp"

namespace modecluster {

namespace {

void check_shapes(const DataMatrix& data, const Labels& labels,
                  const Centroids& centroids) {
  if (labels.assignment.size() != data.rows()) {
    throw std::invalid_argument("labels length does not match data");
  }
  if (centroids.cols() != data.cols()) {
    throw std::invalid_argument("centroid dimension does not match data");
  }
  if (static_cast<std::size_t>(labels.k_count) != centroids.rows()) {
    throw std::invalid_argument("k_count does not match centroid count");
  }
}

// One Lloyd restart from the given initial centroids.
struct RestartOutcome {
  Centroids centroids;
  Labels labels;
  double objective = 0.0;
  int iters = 0;
  std::vector<double> trace;
  long empty_repairs = 0;
};

RestartOutcome lloyd(const DataMatrix& data, Centroids centroids,
                     int max_iters) {
  const std::size_t n = data.rows();
  const std::size_t dim = data.cols();
  const std::size_t k = centroids.rows();

  RestartOutcome out;
  Labels labels{std::vector<int>(n, -1), static_cast<int>(k)};
  Labels prev;

  for (int iter = 1; iter <= max_iters; ++iter) {
    labels = assign_nearest(data, centroids);

    // Re-seed empty clusters at the point currently farthest from its
    // centroid; the point moves to the empty cluster.
    std::vector<std::size_t> sizes = labels.cluster_sizes();
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      double worst = -1.0;
      std::size_t worst_n = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t owner = static_cast<std::size_t>(labels.assignment[i]);
        if (sizes[owner] <= 1) continue;  // keep every cluster nonempty
        const double d2 = squared_distance(data.row(i), centroids.row(owner));
        if (d2 > worst) {
          worst = d2;
          worst_n = i;
        }
      }
      sizes[static_cast<std::size_t>(labels.assignment[worst_n])]--;
      labels.assignment[worst_n] = static_cast<int>(c);
      sizes[c] = 1;
      out.empty_repairs++;
    }

    // Mean update, accumulated in point order.
    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = static_cast<std::size_t>(labels.assignment[i]);
      const auto row = data.row(i);
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += row[d];
      counts[c]++;
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t d = 0; d < dim; ++d) {
        centroids(c, d) = sums[c * dim + d] / static_cast<double>(counts[c]);
      }
    }

    out.trace.push_back(kmeans_objective(data, labels, centroids));
    out.iters = iter;
    if (!prev.assignment.empty() && labels.assignment == prev.assignment) {
      break;
    }
    prev = labels;
  }

  out.centroids = std::move(centroids);
  out.labels = std::move(labels);
  out.objective = out.trace.back();
  return out;
}

}  // namespace

double kmeans_objective(const DataMatrix& data, const Labels& labels,
                        const Centroids& centroids) {
  check_shapes(data, labels, centroids);
  double e = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const std::size_t c = static_cast<std::size_t>(labels.assignment[i]);
    e += squared_distance(data.row(i), centroids.row(c));
  }
  return e;
}

Labels assign_nearest(const DataMatrix& data, const Centroids& centroids) {
  if (centroids.empty()) {
    throw std::invalid_argument("assign_nearest: need at least one centroid");
  }
  if (centroids.cols() != data.cols()) {
    throw std::invalid_argument("assign_nearest: dimension mismatch");
  }
  const std::size_t k = centroids.rows();
  Labels labels{std::vector<int>(data.rows(), 0), static_cast<int>(k)};
  parallel_for(data.rows(), [&](std::size_t i) {
    const auto x = data.row(i);
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d2 = squared_distance(x, centroids.row(c));
      if (d2 < best) {
        best = d2;
        best_c = static_cast<int>(c);
      }
    }
    labels.assignment[i] = best_c;
  });
  return labels;
}

KMeansResult kmeans_run(const DataMatrix& data, const KMeansConfig& cfg) {
  if (data.empty()) {
    throw std::invalid_argument("kmeans_run: empty dataset");
  }
  if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > data.rows()) {
    throw std::invalid_argument("kmeans_run: k must satisfy 1 <= k <= N");
  }
  if (cfg.restarts < 1 || cfg.max_iters < 1) {
    throw std::invalid_argument("kmeans_run: restarts and max_iters >= 1");
  }

  // Per-restart streams drawn up front from a master stream.
  Rng master(cfg.seed);
  std::vector<std::uint64_t> restart_seeds(cfg.restarts);
  for (auto& s : restart_seeds) s = master.next_u64();

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t r) {
    Rng rng(restart_seeds[r]);
    const auto picks = rng.sample_without_replacement(
        data.rows(), static_cast<std::size_t>(cfg.k));
    Centroids init(static_cast<std::size_t>(cfg.k), data.cols());
    for (std::size_t c = 0; c < picks.size(); ++c) {
      const auto row = data.row(picks[c]);
      for (std::size_t d = 0; d < data.cols(); ++d) init(c, d) = row[d];
    }
    outcomes[r] = lloyd(data, std::move(init), cfg.max_iters);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].objective < outcomes[best].objective) best = r;
  }

  KMeansResult result;
  result.centroids = std::move(outcomes[best].centroids);
  result.labels = std::move(outcomes[best].labels);
  result.objective = outcomes[best].objective;
  result.iters = outcomes[best].iters;
  result.objective_trace = std::move(outcomes[best].trace);
  result.restart_objectives.reserve(outcomes.size());
  for (const auto& o : outcomes) result.restart_objectives.push_back(o.objective);
  result.best_restart = static_cast<int>(best);
  result.empty_cluster_repairs = outcomes[best].empty_repairs;
  return result;
}

}  // namespace modecluster
