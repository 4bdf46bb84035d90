#include "modecluster/kmodes.hpp"

#include <cmath>
#include <stdexcept>

#include "modecluster/kde.hpp"
#include "modecluster/parallel.hpp"

namespace modecluster {

void HomotopySchedule::validate() const {
  if (sigmas.empty()) {
    throw std::invalid_argument("HomotopySchedule: need at least one sigma");
  }
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0) || !std::isfinite(sigmas[i])) {
      throw std::invalid_argument(
          "HomotopySchedule: sigmas must be positive and finite");
    }
    if (i > 0 && !(sigmas[i] < sigmas[i - 1])) {
      throw std::invalid_argument(
          "HomotopySchedule: sigmas must be strictly decreasing");
    }
  }
}

HomotopySchedule make_schedule(double sigma_start, double sigma_target,
                               int steps) {

  if (!(sigma_target > 0.0) || !(sigma_start >= sigma_target)) {
    throw std::invalid_argument(
        "make_schedule: need sigma_start >= sigma_target > 0");
  }
  if (steps < 1) {
    throw std::invalid_argument("make_schedule: steps must be >= 1");
  }
  HomotopySchedule schedule;
  if (steps == 1) {
    schedule.sigmas = {sigma_target};
    return schedule;
  }
  if (sigma_start == sigma_target) {
    throw std::invalid_argument(
        "make_schedule: equal endpoints need steps == 1");
  }
  schedule.sigmas.resize(static_cast<std::size_t>(steps));
  const double log_ratio = std::log(sigma_target / sigma_start);
  for (int i = 0; i < steps; ++i) {
    schedule.sigmas[static_cast<std::size_t>(i)] =
        sigma_start * std::exp(log_ratio * i / static_cast<double>(steps - 1));
  }
  schedule.sigmas.front() = sigma_start;
  schedule.sigmas.back() = sigma_target;
  schedule.validate();
  return schedule;
}

double kmodes_objective(const DataMatrix& data, const Labels& labels,
                        const Centroids& centroids, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("kmodes_objective: sigma must be > 0");
  }
  if (labels.assignment.size() != data.rows() ||
      centroids.cols() != data.cols() ||
      static_cast<std::size_t>(labels.k_count) != centroids.rows()) {
    throw std::invalid_argument("kmodes_objective: shape mismatch");
  }
  const double inv_sigma = 1.0 / sigma;
  double l = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto x = data.row(i);
    const auto c = centroids.row(static_cast<std::size_t>(labels.assignment[i]));
    double d2 = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double diff = (x[d] - c[d]) * inv_sigma;
      d2 += diff * diff;
    }
    l += std::exp(-0.5 * d2);
  }
  return l;
}

KModesIterResult kmodes_fixed_sigma_iter(const DataMatrix& data,
                                         const Labels& labels,
                                         const Centroids& centroids,
                                         double sigma,
                                         const KModesConfig& cfg) {
  (void)labels;  // the incoming assignment is superseded by the argmax step
  KModesIterResult out;
  out.labels = assign_nearest(data, centroids);
  out.centroids = centroids;

  const std::size_t k = centroids.rows();
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    members[static_cast<std::size_t>(out.labels.assignment[i])].push_back(i);
  }

  std::vector<int> nonconverged(k, 0);
  parallel_for(k, [&](std::size_t c) {
    if (members[c].empty()) return;
    Kde kde(data, members[c], sigma);
    const ModeSeekConfig ms{cfg.ms_tol, cfg.inner_ms_iters};
    const auto seek = mode_seek(kde, out.centroids.row(c), ms);
    for (std::size_t d = 0; d < data.cols(); ++d) {
      out.centroids(c, d) = seek.mode[d];
    }
    nonconverged[c] = seek.converged ? 0 : 1;
  });

  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) out.empty_clusters++;
    out.nonconverged_mode_steps += nonconverged[c];
  }
  out.objective = kmodes_objective(data, out.labels, out.centroids, sigma);
  return out;
}

namespace {

KModesConfig with_k(const KModesConfig& cfg) {
  KModesConfig c = cfg;
  c.kmeans.k = cfg.k;
  return c;
}

void check_config(const KModesConfig& cfg) {
  if (cfg.inner_ms_iters < 1 || cfg.iters_per_sigma < 1) {
    throw std::invalid_argument(
        "kmodes: inner_ms_iters and iters_per_sigma must be >= 1");
  }
  if (!(cfg.ms_tol > 0.0)) {
    throw std::invalid_argument("kmodes: ms_tol must be > 0");
  }
}

}  // namespace

KModesResult kmodes_run(const DataMatrix& data,
                        const HomotopySchedule& schedule,
                        const KModesConfig& cfg_in) {
  schedule.validate();
  const KModesConfig cfg = with_k(cfg_in);
  check_config(cfg);

  KModesResult result;
  result.init = kmeans_run(data, cfg.kmeans);
  result.labels = result.init.labels;
  result.centroids = result.init.centroids;

  result.centroid_path.reserve(schedule.sigmas.size());
  for (double sigma : schedule.sigmas) {
    result.objective_trace.push_back(
        {sigma, 0,
         kmodes_objective(data, result.labels, result.centroids, sigma)});
    for (int j = 1; j <= cfg.iters_per_sigma; ++j) {
      auto iter =
          kmodes_fixed_sigma_iter(data, result.labels, result.centroids,
                                  sigma, cfg);
      result.labels = std::move(iter.labels);
      result.centroids = std::move(iter.centroids);
      result.objective = iter.objective;
      result.objective_trace.push_back({sigma, j, iter.objective});
      result.diagnostics.empty_cluster_events += iter.empty_clusters;
      result.diagnostics.nonconverged_mode_steps += iter.nonconverged_mode_steps;
    }
    result.centroid_path.push_back(result.centroids);
  }
  return result;
}

KModesResult kmodes_fixed_run(const DataMatrix& data, double sigma,
                              const KModesConfig& cfg_in) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("kmodes_fixed_run: sigma must be positive");
  }
  const KModesConfig cfg = with_k(cfg_in);
  check_config(cfg);
  if (cfg.max_outer_iters < 1) {
    throw std::invalid_argument("kmodes_fixed_run: max_outer_iters >= 1");
  }

  KModesResult result;
  result.init = kmeans_run(data, cfg.kmeans);
  result.labels = result.init.labels;
  result.centroids = result.init.centroids;
  result.objective = kmodes_objective(data, result.labels, result.centroids, sigma);
  result.objective_trace.push_back({sigma, 0, result.objective});

  for (int t = 1; t <= cfg.max_outer_iters; ++t) {
    auto iter = kmodes_fixed_sigma_iter(data, result.labels, result.centroids,
                                        sigma, cfg);
    double moved = 0.0;
    for (std::size_t c = 0; c < result.centroids.rows(); ++c) {
      moved = std::max(moved, euclidean_distance(result.centroids.row(c),
                                                 iter.centroids.row(c)));
    }
    const bool stable = iter.labels.assignment == result.labels.assignment &&
                        moved <= cfg.ms_tol * sigma;
    result.labels = std::move(iter.labels);
    result.centroids = std::move(iter.centroids);
    result.objective = iter.objective;
    result.objective_trace.push_back({sigma, t, iter.objective});
    result.diagnostics.empty_cluster_events += iter.empty_clusters;
    result.diagnostics.nonconverged_mode_steps += iter.nonconverged_mode_steps;
    if (stable) break;
  }
  result.centroid_path.push_back(result.centroids);
  return result;
}

}  // namespace modecluster
