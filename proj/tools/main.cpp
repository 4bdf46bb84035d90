#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modecluster/bandwidth.hpp"
#include "modecluster/csv.hpp"
#include "modecluster/datasets.hpp"
#include "modecluster/experiments.hpp"
#include "modecluster/kmeans.hpp"
#include "modecluster/kmodes.hpp"
#include "modecluster/matrix.hpp"
#include "modecluster/meanshift.hpp"
#include "modecluster/metrics.hpp"
#include "modecluster/parallel.hpp"

namespace mc = modecluster;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 2 usage, 3 data error, 4 numerical failure.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericalError(std::string(what) + " is not finite");
  }
}

json centroids_to_json(const mc::Centroids& c) {
  json rows = json::array();
  for (std::size_t r = 0; r < c.rows(); ++r) {
    json row = json::array();
    for (std::size_t d = 0; d < c.cols(); ++d) row.push_back(c(r, d));
    rows.push_back(row);
  }
  return rows;
}

mc::DataMatrix parse_centers(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t semi = text.find(';', start);
    const std::string part =
        text.substr(start, semi == std::string::npos ? std::string::npos
                                                     : semi - start);
    std::vector<double> row;
    std::size_t p = 0;
    while (p <= part.size()) {
      const std::size_t comma = part.find(',', p);
      const std::string field = part.substr(
          p, comma == std::string::npos ? std::string::npos : comma - p);
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size()) {
        throw std::runtime_error("cannot parse center coordinate '" + field +
                                 "'");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    rows.push_back(std::move(row));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return mc::DataMatrix::from_rows(rows);
}

json metrics_json(const mc::Labels& truth, const mc::Labels& pred) {
  return {{"ari", mc::adjusted_rand_index(truth, pred)},
          {"nmi", mc::normalized_mutual_information(truth, pred)}};
}

// ---- generate ----

struct GenerateArgs {
  std::string out = "data.csv";
  std::string labels_out = "labels.csv";
  std::uint64_t seed = 0;

  std::string centers = "0,0;5,0;2.5,4.3";
  std::string n_per_center = "200";
  double stddev = 1.0;

  std::size_t n_moon = 500;
  double noise = 0.1;

  mc::DegreeMixtureSpec degree;
};

int run_generate(const std::string& kind, const GenerateArgs& a) {
  mc::GeneratedDataset generated;
  json config{{"seed", a.seed}};
  if (kind == "gaussian-blobs") {
    const auto centers = parse_centers(a.centers);
    std::vector<std::size_t> counts;
    std::size_t p = 0;
    while (p <= a.n_per_center.size()) {
      const std::size_t comma = a.n_per_center.find(',', p);
      const std::string field = a.n_per_center.substr(
          p, comma == std::string::npos ? std::string::npos : comma - p);
      counts.push_back(static_cast<std::size_t>(std::strtoull(field.c_str(), nullptr, 10)));
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    if (counts.size() == 1) counts.assign(centers.rows(), counts.front());
    generated = mc::gen_gaussian_blobs(centers, counts, a.stddev, a.seed);
    config["centers"] = a.centers;
    config["n_per_center"] = counts;
    config["stddev"] = a.stddev;
  } else if (kind == "two-moons") {
    generated = mc::gen_two_moons(a.n_moon, a.noise, a.seed);
    config["n"] = a.n_moon;
    config["noise"] = a.noise;
  } else if (kind == "degree-mixture") {
    mc::DegreeMixtureSpec spec = a.degree;
    spec.seed = a.seed;
    generated = mc::gen_degree_mixture(spec);
    config["n_gauss"] = spec.n_gauss;
    config["gauss_mean"] = spec.gauss_mean;
    config["gauss_std"] = spec.gauss_std;
    config["n_power"] = spec.n_power;
    config["power_exponent"] = spec.power_exponent;
    config["power_xmin"] = spec.power_xmin;
  }
  mc::save_csv(generated.data, a.out);
  mc::save_labels(generated.labels, a.labels_out);
  json report{{"command", "generate"},
              {"kind", kind},
              {"config", config},
              {"n", generated.data.rows()},
              {"d", generated.data.cols()},
              {"components", generated.labels.k_count},
              {"warnings", generated.warnings},
              {"files", {{"data", a.out}, {"labels", a.labels_out}}}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

// ---- cluster ----

struct ClusterArgs {
  std::string input;
  bool has_header = false;
  std::string algo;
  std::string truth;
  std::string out_labels = "labels.csv";
  std::string out_centroids = "centroids.csv";
  std::uint64_t seed = 0;

  int k = 2;
  int restarts = 20;
  int max_iters = 300;

  std::string sigma_start = "auto";   // auto = bounding-box diagonal
  std::string sigma_target = "auto";  // auto = mean 10th-NN distance
  int steps = 20;
  int j_iters = 2;
  int i_iters = 100;
  double ms_tol = 1e-8;
  std::string emit_path;

  double sigma = 0.0;
  double tol = 1e-8;
  int ms_max_iters = 1000;
  double merge_radius_factor = 1e-2;
};

double resolve_sigma(const std::string& text, const char* what,
                     double auto_value) {
  if (text == "auto") return auto_value;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !(v > 0.0)) {
    throw std::runtime_error(std::string("invalid ") + what + " '" + text +
                             "' (positive number or 'auto')");
  }
  return v;
}

int run_cluster(const ClusterArgs& a) {
  const auto t_start = std::chrono::steady_clock::now();
  const mc::DataMatrix data = mc::load_csv(a.input, a.has_header);
  data.check_finite();
  std::optional<mc::Labels> truth;
  if (!a.truth.empty()) truth = mc::load_labels(a.truth);
  const double t_load = seconds_since(t_start);

  json report{{"command", "cluster"},
              {"algorithm", a.algo},
              {"input", a.input}};
  json config{{"seed", a.seed}, {"threads", mc::max_threads()}};
  json diagnostics = json::object();

  const auto t_cluster = std::chrono::steady_clock::now();
  mc::Labels labels;
  mc::Centroids centroids;

  if (a.algo == "kmeans") {
    mc::KMeansConfig cfg{a.k, a.restarts, a.max_iters, a.seed};
    const auto result = mc::kmeans_run(data, cfg);
    require_finite(result.objective, "k-means objective");
    labels = result.labels;
    centroids = result.centroids;
    config["k"] = a.k;
    config["restarts"] = a.restarts;
    config["max_iters"] = a.max_iters;
    report["objective"] = result.objective;
    report["iters"] = result.iters;
    diagnostics["empty_cluster_repairs"] = result.empty_cluster_repairs;
    diagnostics["restart_objectives"] = result.restart_objectives;
  } else if (a.algo == "kmodes") {
    const double sigma_start =
        resolve_sigma(a.sigma_start, "--sigma-start",
                      mc::bounding_box_diagonal(data));
    const double sigma_target = resolve_sigma(
        a.sigma_target, "--sigma-target",
        data.rows() > 10 ? mc::knn_avg_bandwidth(data, 10) : sigma_start);
    mc::KModesConfig cfg;
    cfg.k = a.k;
    cfg.inner_ms_iters = a.i_iters;
    cfg.iters_per_sigma = a.j_iters;
    cfg.ms_tol = a.ms_tol;
    cfg.kmeans = mc::KMeansConfig{a.k, a.restarts, a.max_iters, a.seed};
    const auto schedule = mc::make_schedule(sigma_start, sigma_target, a.steps);
    const auto result = mc::kmodes_run(data, schedule, cfg);
    require_finite(result.objective, "k-modes objective");
    labels = result.labels;
    centroids = result.centroids;
    config["k"] = a.k;
    config["restarts"] = a.restarts;
    config["sigma_start"] = sigma_start;
    config["sigma_target"] = sigma_target;
    config["steps"] = a.steps;
    config["j_iters"] = a.j_iters;
    config["i_iters"] = a.i_iters;
    config["ms_tol"] = a.ms_tol;
    config["schedule"] = schedule.sigmas;
    report["objective"] = result.objective;
    report["kmeans_init_objective"] = result.init.objective;
    json path = json::array();
    for (std::size_t t = 0; t < result.centroid_path.size(); ++t) {
      path.push_back({{"sigma", schedule.sigmas[t]},
                      {"centroids", centroids_to_json(result.centroid_path[t])}});
    }
    report["centroid_path"] = path;
    if (!a.emit_path.empty()) {
      mc::save_centroid_path(schedule.sigmas, result.centroid_path, a.emit_path);
      report["centroid_path_file"] = a.emit_path;
    }
    diagnostics["empty_cluster_events"] =
        result.diagnostics.empty_cluster_events;
    diagnostics["nonconverged_mode_steps"] =
        result.diagnostics.nonconverged_mode_steps;
  } else if (a.algo == "gms") {
    if (!(a.sigma > 0.0)) {
      throw std::runtime_error("--sigma must be > 0 for gms");
    }
    mc::GmsConfig cfg;
    cfg.sigma = a.sigma;
    cfg.tol = a.tol;
    cfg.max_iters = a.ms_max_iters;
    cfg.merge_radius_factor = a.merge_radius_factor;
    const auto result = mc::gms_cluster(data, cfg);
    labels = result.labels;
    centroids = result.modes;
    config["sigma"] = a.sigma;
    config["tol"] = a.tol;
    config["max_iters"] = a.ms_max_iters;
    config["merge_radius_factor"] = a.merge_radius_factor;
    report["mode_count"] = result.labels.k_count;
    diagnostics["iters_total"] = result.iters_total;
    diagnostics["nonconverged_seeds"] = result.nonconverged_seeds;
  } else {
    throw std::runtime_error("unknown --algo '" + a.algo +
                             "' (kmeans, kmodes, gms)");
  }
  const double t_fit = seconds_since(t_cluster);

  mc::save_labels(labels, a.out_labels);
  mc::save_csv(centroids, a.out_centroids);
  report["config"] = config;
  report["labels_file"] = a.out_labels;
  report["centroids_file"] = a.out_centroids;
  report["centroids"] = centroids_to_json(centroids);
  report["k_found"] = labels.k_count;
  if (truth) report["metrics"] = metrics_json(*truth, labels);
  report["diagnostics"] = diagnostics;
  report["timing_s"] = {{"load", t_load},
                        {"cluster", t_fit},
                        {"total", seconds_since(t_start)}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "modecluster: K-modes clustering by kernel-density mode seeking, with "
      "K-means and Gaussian mean-shift baselines"};
  app.require_subcommand(1);
  int threads = 0;
  if (const char* env = std::getenv("MODECLUSTER_THREADS")) {
    threads = std::atoi(env);
  }
  app.add_option("--threads", threads,
                 "Worker thread cap (default: available cores; mirrors "
                 "MODECLUSTER_THREADS)");

  // generate
  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  generate->require_subcommand(1);
  std::vector<CLI::App*> gen_kinds;
  auto* blobs = generate->add_subcommand("gaussian-blobs",
                                         "Isotropic Gaussian clusters");
  blobs->add_option("--centers", gen.centers,
                    "Semicolon-separated center rows, e.g. '0,0;5,0'");
  blobs->add_option("--n-per-center", gen.n_per_center,
                    "Points per center (single value or comma list)");
  blobs->add_option("--stddev", gen.stddev, "Isotropic standard deviation");
  auto* moons = generate->add_subcommand("two-moons",
                                         "Two interleaved half circles");
  moons->add_option("--n", gen.n_moon, "Points per moon");
  moons->add_option("--noise", gen.noise, "Gaussian noise scale");
  auto* degree = generate->add_subcommand(
      "degree-mixture", "1D Gaussian + power-law degree mixture");
  degree->add_option("--n-gauss", gen.degree.n_gauss, "Gaussian sample count");
  degree->add_option("--gauss-mean", gen.degree.gauss_mean, "Gaussian mean");
  degree->add_option("--gauss-std", gen.degree.gauss_std, "Gaussian stddev");
  degree->add_option("--n-power", gen.degree.n_power, "Pareto sample count");
  degree->add_option("--power-exponent", gen.degree.power_exponent,
                     "Pareto shape exponent");
  degree->add_option("--power-xmin", gen.degree.power_xmin, "Pareto minimum");
  gen_kinds = {blobs, moons, degree};
  for (auto* kind : gen_kinds) {
    kind->add_option("--seed", gen.seed, "RNG seed");
    kind->add_option("--out", gen.out, "Data CSV path");
    kind->add_option("--labels-out", gen.labels_out, "Labels CSV path");
  }

  // cluster
  ClusterArgs cl;
  auto* cluster = app.add_subcommand("cluster", "Run a clustering algorithm");
  cluster->add_option("input", cl.input, "Input data CSV")->required();
  cluster->add_flag("--has-header", cl.has_header, "Skip a header line");
  cluster->add_option("--algo", cl.algo, "kmeans | kmodes | gms")->required();
  cluster->add_option("--truth", cl.truth, "Ground-truth labels CSV");
  cluster->add_option("--out-labels", cl.out_labels, "Labels output path");
  cluster->add_option("--out-centroids", cl.out_centroids,
                      "Centroids output path");
  cluster->add_option("--seed", cl.seed, "RNG seed");
  cluster->add_option("--k", cl.k, "Cluster count (kmeans, kmodes)");
  cluster->add_option("--restarts", cl.restarts, "K-means restarts");
  cluster->add_option("--max-iters", cl.max_iters, "K-means iteration cap");
  cluster->add_option("--sigma-start", cl.sigma_start,
                      "Homotopy start bandwidth or 'auto' (bounding-box "
                      "diagonal)");
  cluster->add_option("--sigma-target", cl.sigma_target,
                      "Homotopy target bandwidth or 'auto' (mean 10th-NN "
                      "distance)");
  cluster->add_option("--steps", cl.steps, "Homotopy schedule length");
  cluster->add_option("--j-iters", cl.j_iters, "Outer iterations per sigma");
  cluster->add_option("--i-iters", cl.i_iters,
                      "Mean-shift iteration cap per mode step");
  cluster->add_option("--ms-tol", cl.ms_tol, "Mode step tolerance");
  cluster->add_option("--emit-path", cl.emit_path,
                      "Write per-sigma centroid snapshots to this CSV");
  cluster->add_option("--sigma", cl.sigma, "GMS bandwidth");
  cluster->add_option("--tol", cl.tol, "GMS mode-seek tolerance");
  cluster->add_option("--ms-max-iters", cl.ms_max_iters,
                      "GMS mean-shift iteration cap");
  cluster->add_option("--merge-radius-factor", cl.merge_radius_factor,
                      "GMS mode merge radius in units of sigma");

  // evaluate
  std::string eval_truth, eval_pred;
  auto* evaluate = app.add_subcommand(
      "evaluate", "ARI and NMI between two labelings");
  evaluate->add_option("--truth", eval_truth, "Reference labels CSV")
      ->required();
  evaluate->add_option("--pred", eval_pred, "Predicted labels CSV")
      ->required();

  // bandwidth
  std::string bw_input;
  int bw_knn = 10;
  bool bw_has_header = false;
  auto* bandwidth = app.add_subcommand(
      "bandwidth", "Mean distance to the k-th nearest neighbor");
  bandwidth->add_option("input", bw_input, "Input data CSV")->required();
  bandwidth->add_option("--knn", bw_knn, "Neighbor rank k");
  bandwidth->add_flag("--has-header", bw_has_header, "Skip a header line");

  // gms-scan
  std::string scan_input;
  double scan_lo = 0.0, scan_hi = 0.0;
  int scan_steps = 20, scan_target = 0;
  bool scan_has_header = false;
  ClusterArgs scan_base;
  auto* scan = app.add_subcommand(
      "gms-scan", "Mode counts over a geometric bandwidth grid");
  scan->add_option("input", scan_input, "Input data CSV")->required();
  scan->add_option("--sigma-lo", scan_lo, "Grid lower bound")->required();
  scan->add_option("--sigma-hi", scan_hi, "Grid upper bound")->required();
  scan->add_option("--steps", scan_steps, "Grid size");
  scan->add_option("--target-k", scan_target, "Desired mode count")
      ->required();
  scan->add_option("--tol", scan_base.tol, "GMS mode-seek tolerance");
  scan->add_option("--merge-radius-factor", scan_base.merge_radius_factor,
                   "GMS mode merge radius in units of sigma");
  scan->add_flag("--has-header", scan_has_header, "Skip a header line");

  // reproduce
  std::string rep_id;
  std::uint64_t rep_seed = 1;
  std::string rep_outdir;
  auto* reproduce = app.add_subcommand(
      "reproduce", "Run a canned experiment and write its artifacts");
  reproduce->add_option("experiment", rep_id, "three-gaussians | two-moons | degree")
      ->required()
      ->check(CLI::IsMember(mc::reproduce_experiment_ids()));
  reproduce->add_option("--seed", rep_seed, "RNG seed");
  reproduce->add_option("--outdir", rep_outdir,
                        "Artifact directory (default reproduce_<experiment>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  mc::set_max_threads(threads);

  try {
    if (generate->parsed()) {
      for (auto* kind : gen_kinds) {
        if (kind->parsed()) return run_generate(kind->get_name(), gen);
      }
    } else if (cluster->parsed()) {
      return run_cluster(cl);
    } else if (evaluate->parsed()) {
      const auto truth = mc::load_labels(eval_truth);
      const auto pred = mc::load_labels(eval_pred);
      std::cout << metrics_json(truth, pred).dump(2) << '\n';
      return 0;
    } else if (bandwidth->parsed()) {
      const auto data = mc::load_csv(bw_input, bw_has_header);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g",
                    mc::knn_avg_bandwidth(data, bw_knn));
      std::cout << buf << '\n';
      return 0;
    } else if (scan->parsed()) {
      const auto data = mc::load_csv(scan_input, scan_has_header);
      mc::GmsConfig base;
      base.tol = scan_base.tol;
      base.merge_radius_factor = scan_base.merge_radius_factor;
      const auto result = mc::gms_mode_count_scan(data, scan_lo, scan_hi,
                                                  scan_steps, scan_target, base);
      json entries = json::array();
      for (const auto& e : result.entries) {
        entries.push_back({{"sigma", e.sigma}, {"mode_count", e.mode_count}});
      }
      json report{{"command", "gms-scan"},
                  {"target_k", scan_target},
                  {"entries", entries}};
      report["sigma_for_target"] =
          result.sigma_for_target ? json(*result.sigma_for_target)
                                  : json(nullptr);
      std::cout << report.dump(2) << '\n';
      return 0;
    } else if (reproduce->parsed()) {
      mc::ReproduceOptions opts;
      opts.seed = rep_seed;
      opts.outdir = rep_outdir.empty() ? "reproduce_" + rep_id : rep_outdir;
      const json manifest = mc::reproduce_experiment(rep_id, opts);
      std::cout << manifest.dump(2) << '\n';
      return 0;
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
