#include "modecluster/meanshift.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "modecluster/kde.hpp"
#include "modecluster/parallel.hpp"

namespace modecluster {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;  // keep the smallest index as root
    else parent[a] = b;
  }
};

}  // namespace

GmsResult gms_cluster(const DataMatrix& data, const GmsConfig& cfg) {
  if (data.empty()) {
    throw std::invalid_argument("gms_cluster: empty dataset");
  }
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) {
    throw std::invalid_argument("gms_cluster: sigma must be positive");
  }
  const std::size_t n = data.rows();
  const std::size_t dim = data.cols();
  const Kde kde(data, cfg.sigma);

  // Map each point to the first row with identical coordinates.
  std::vector<std::size_t> seed_of(n);
  std::vector<std::size_t> uniques;
  if (cfg.dedupe_identical_seeds) {
    std::map<std::vector<double>, std::size_t> first_row;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> key(data.row(i).begin(), data.row(i).end());
      const auto [it, inserted] = first_row.try_emplace(std::move(key), uniques.size());
      if (inserted) uniques.push_back(i);
      seed_of[i] = it->second;
    }
  } else {
    uniques.resize(n);
    std::iota(uniques.begin(), uniques.end(), std::size_t{0});
    std::iota(seed_of.begin(), seed_of.end(), std::size_t{0});
  }

  const std::size_t u = uniques.size();
  std::vector<ModeSeekResult> seeks(u);
  parallel_for(u, [&](std::size_t i) {
    seeks[i] = mode_seek(kde, data.row(uniques[i]),
                         ModeSeekConfig{cfg.tol, cfg.max_iters});
  });

  GmsResult result;
  for (const auto& s : seeks) {
    result.iters_total += s.iters;
    if (!s.converged) result.nonconverged_seeds++;
  }

  // Single-linkage merge of converged locations.
  const double merge_radius = cfg.merge_radius_factor * cfg.sigma;
  UnionFind uf(u);
  for (std::size_t i = 0; i < u; ++i) {
    for (std::size_t j = i + 1; j < u; ++j) {
      if (euclidean_distance(std::span<const double>(seeks[i].mode),
                             std::span<const double>(seeks[j].mode)) <=
          merge_radius) {
        uf.unite(i, j);
      }
    }
  }

  // Cluster ids in order of first appearance over data rows.
  std::vector<int> component_id(u, -1);
  result.labels.assignment.resize(n);
  int next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(seed_of[i]);
    if (component_id[root] < 0) component_id[root] = next_id++;
    result.labels.assignment[i] = component_id[root];
  }
  result.labels.k_count = next_id;

  // Mode = mean of the merged endpoints over all N seeds (duplicates counted
  // once per data row), then polished until its own step is below
  // tol * sigma so the reported location is a fixed point at that scale.
  const std::size_t m = static_cast<std::size_t>(next_id);
  result.modes = Centroids(m, dim);
  std::vector<double> weight(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = static_cast<std::size_t>(result.labels.assignment[i]);
    const auto& endpoint = seeks[seed_of[i]].mode;
    for (std::size_t d = 0; d < dim; ++d) result.modes(c, d) += endpoint[d];
    weight[c] += 1.0;
  }
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t d = 0; d < dim; ++d) result.modes(c, d) /= weight[c];
  }

  std::vector<long> polish_iters(m, 0);
  parallel_for(m, [&](std::size_t c) {
    std::vector<double> x(result.modes.row(c).begin(),
                          result.modes.row(c).end());
    std::vector<double> resp(n);
    std::vector<double> next(dim);
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      detail::mean_shift_step_into(kde, x, resp, next);
      const double step = euclidean_distance(std::span<const double>(x),
                                             std::span<const double>(next));
      x = next;
      polish_iters[c]++;
      if (step <= 0.5 * cfg.tol * cfg.sigma) break;
    }
    for (std::size_t d = 0; d < dim; ++d) result.modes(c, d) = x[d];
  });
  for (long it : polish_iters) result.iters_total += it;

  return result;
}

GmsScanResult gms_mode_count_scan(const DataMatrix& data, double sigma_lo,
                                  double sigma_hi, int steps, int target_k,
                                  const GmsConfig& base) {
  if (!(sigma_lo > 0.0) || !(sigma_lo < sigma_hi)) {
    throw std::invalid_argument(
        "gms_mode_count_scan: need 0 < sigma_lo < sigma_hi");
  }
  if (steps < 2) {
    throw std::invalid_argument("gms_mode_count_scan: steps must be >= 2");
  }
  GmsScanResult result;
  result.entries.reserve(static_cast<std::size_t>(steps));
  const double log_ratio = std::log(sigma_hi / sigma_lo);
  for (int i = 0; i < steps; ++i) {
    double sigma =
        sigma_lo * std::exp(log_ratio * i / static_cast<double>(steps - 1));
    if (i == 0) sigma = sigma_lo;
    if (i == steps - 1) sigma = sigma_hi;
    GmsConfig cfg = base;
    cfg.sigma = sigma;
    const auto clustering = gms_cluster(data, cfg);
    result.entries.push_back({sigma, clustering.labels.k_count});
  }
  for (auto it = result.entries.rbegin(); it != result.entries.rend(); ++it) {
    if (it->mode_count == target_k) {
      result.sigma_for_target = it->sigma;
      break;
    }
  }
  return result;
}

}  // namespace modecluster
