#include "modecluster/experiments.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "modecluster/bandwidth.hpp"
#include "modecluster/csv.hpp"
#include "modecluster/datasets.hpp"
#include "modecluster/kde.hpp"
#include "modecluster/kmeans.hpp"
#include "modecluster/kmodes.hpp"
#include "modecluster/meanshift.hpp"
#include "modecluster/metrics.hpp"

namespace modecluster {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ExperimentSetup {
  GeneratedDataset dataset;
  int k = 2;
  double sigma_start = 0.0;
  double sigma_target = 0.0;
  int steps = 0;
  double gms_sigma = 0.0;
};

ExperimentSetup make_setup(const std::string& id, std::uint64_t seed) {
  ExperimentSetup s;
  if (id == "three-gaussians") {
    // Three well-separated blobs clustered with K = 2, so one K-means
    // centroid lands between clusters.
    const auto centers =
        DataMatrix::from_rows({{0.0, 0.0}, {5.0, 0.0}, {2.5, 4.3}});
    s.dataset = gen_gaussian_blobs(centers, {200, 200, 200}, 1.0, seed);
    s.k = 2;
    s.sigma_start = 3.0;
    s.sigma_target = 1.0;
    s.steps = 20;
    s.gms_sigma = 1.0;
  } else if (id == "two-moons") {
    s.dataset = gen_two_moons(500, 0.1, seed);
    s.k = 2;
    s.sigma_start = 1.0;
    s.sigma_target = 0.1;
    s.steps = 20;
    s.gms_sigma = 0.1;
  } else if (id == "degree") {
    DegreeMixtureSpec spec;
    spec.seed = seed;
    s.dataset = gen_degree_mixture(spec);
    s.k = 2;
    s.sigma_start = 200.0;
    s.sigma_target = 1.0;
    s.steps = 40;
    s.gms_sigma = 1.0;
  } else {
    throw std::invalid_argument("unknown experiment id: " + id);
  }
  return s;
}

json centroids_to_json(const Centroids& c) {
  json rows = json::array();
  for (std::size_t r = 0; r < c.rows(); ++r) {
    json row = json::array();
    for (std::size_t d = 0; d < c.cols(); ++d) row.push_back(c(r, d));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<std::string> reproduce_experiment_ids() {
  return {"three-gaussians", "two-moons", "degree"};
}

json reproduce_experiment(const std::string& id, const ReproduceOptions& opts) {
  auto t0 = Clock::now();
  ExperimentSetup setup = make_setup(id, opts.seed);
  const DataMatrix& data = setup.dataset.data;
  const Labels& truth = setup.dataset.labels;
  const double t_generate = seconds_since(t0);

  KModesConfig cfg;
  cfg.k = setup.k;
  cfg.kmeans.k = setup.k;
  cfg.kmeans.restarts = 20;
  cfg.kmeans.seed = opts.seed;
  const auto schedule =
      make_schedule(setup.sigma_start, setup.sigma_target, setup.steps);

  t0 = Clock::now();
  const KMeansResult kmeans = kmeans_run(data, cfg.kmeans);
  const double t_kmeans = seconds_since(t0);

  t0 = Clock::now();
  const KModesResult kmodes = kmodes_run(data, schedule, cfg);
  const double t_kmodes = seconds_since(t0);

  t0 = Clock::now();
  GmsConfig gms_cfg;
  gms_cfg.sigma = setup.gms_sigma;
  const GmsResult gms = gms_cluster(data, gms_cfg);
  const double t_gms = seconds_since(t0);

  // Per-cluster kde comparison at the target bandwidth: the kde of each
  // K-modes cluster evaluated at the K-modes centroid and at the K-means
  // mean for the same cluster index.
  json kde_at_kmodes = json::array();
  json kde_at_kmeans = json::array();
  for (int c = 0; c < setup.k; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      if (kmodes.labels.assignment[i] == c) members.push_back(i);
    }
    if (members.empty()) {
      kde_at_kmodes.push_back(nullptr);
      kde_at_kmeans.push_back(nullptr);
      continue;
    }
    Kde kde(data, members, setup.sigma_target);
    kde_at_kmodes.push_back(
        kde_eval(kde, kmodes.centroids.row(static_cast<std::size_t>(c))));
    kde_at_kmeans.push_back(
        kde_eval(kde, kmeans.centroids.row(static_cast<std::size_t>(c))));
  }

  json manifest;
  manifest["experiment"] = id;
  manifest["seed"] = opts.seed;
  manifest["dataset"] = {{"n", data.rows()},
                         {"d", data.cols()},
                         {"components", truth.k_count},
                         {"warnings", setup.dataset.warnings}};
  manifest["config"] = {
      {"k", setup.k},
      {"kmeans", {{"restarts", cfg.kmeans.restarts},
                  {"max_iters", cfg.kmeans.max_iters},
                  {"seed", opts.seed}}},
      {"kmodes", {{"sigma_start", setup.sigma_start},
                  {"sigma_target", setup.sigma_target},
                  {"steps", setup.steps},
                  {"j_iters", cfg.iters_per_sigma},
                  {"i_iters", cfg.inner_ms_iters},
                  {"ms_tol", cfg.ms_tol}}},
      {"gms", {{"sigma", setup.gms_sigma},
               {"tol", gms_cfg.tol},
               {"merge_radius_factor", gms_cfg.merge_radius_factor}}}};
  manifest["results"] = {
      {"kmeans",
       {{"objective", kmeans.objective},
        {"ari", adjusted_rand_index(truth, kmeans.labels)},
        {"nmi", normalized_mutual_information(truth, kmeans.labels)},
        {"centroids", centroids_to_json(kmeans.centroids)}}},
      {"kmodes",
       {{"objective", kmodes.objective},
        {"ari", adjusted_rand_index(truth, kmodes.labels)},
        {"nmi", normalized_mutual_information(truth, kmodes.labels)},
        {"centroids", centroids_to_json(kmodes.centroids)},
        {"kde_at_kmodes_centroid", kde_at_kmodes},
        {"kde_at_kmeans_mean", kde_at_kmeans},
        {"empty_cluster_events", kmodes.diagnostics.empty_cluster_events},
        {"nonconverged_mode_steps",
         kmodes.diagnostics.nonconverged_mode_steps}}},
      {"gms",
       {{"mode_count", gms.labels.k_count},
        {"ari", adjusted_rand_index(truth, gms.labels)},
        {"nmi", normalized_mutual_information(truth, gms.labels)},
        {"iters_total", gms.iters_total},
        {"nonconverged_seeds", gms.nonconverged_seeds}}}};
  manifest["timing_s"] = {{"generate", t_generate},
                          {"kmeans", t_kmeans},
                          {"kmodes", t_kmodes},
                          {"gms", t_gms}};

  if (opts.write_files) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.outdir);
    const auto file = [&](const char* name) { return opts.outdir / name; };
    save_csv(data, file("data.csv"));
    save_labels(truth, file("truth_labels.csv"));
    save_labels(kmeans.labels, file("kmeans_labels.csv"));
    save_csv(kmeans.centroids, file("kmeans_centroids.csv"));
    save_labels(kmodes.labels, file("kmodes_labels.csv"));
    save_csv(kmodes.centroids, file("kmodes_centroids.csv"));
    save_centroid_path(schedule.sigmas, kmodes.centroid_path,
                       file("kmodes_path.csv"));
    save_labels(gms.labels, file("gms_labels.csv"));
    save_csv(gms.modes, file("gms_modes.csv"));
    manifest["files"] = {{"data", "data.csv"},
                         {"truth", "truth_labels.csv"},
                         {"kmeans_labels", "kmeans_labels.csv"},
                         {"kmeans_centroids", "kmeans_centroids.csv"},
                         {"kmodes_labels", "kmodes_labels.csv"},
                         {"kmodes_centroids", "kmodes_centroids.csv"},
                         {"kmodes_path", "kmodes_path.csv"},
                         {"gms_labels", "gms_labels.csv"},
                         {"gms_modes", "gms_modes.csv"}};
    std::ofstream out(file("manifest.json"));
    out << manifest.dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("cannot write manifest.json");
    }
  }
  return manifest;
}

}  // namespace modecluster
