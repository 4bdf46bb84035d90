#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "modecluster/bandwidth.hpp"
#include "modecluster/csv.hpp"
#include "modecluster/datasets.hpp"
#include "modecluster/kde.hpp"
#include "modecluster/kmeans.hpp"
#include "modecluster/kmodes.hpp"
#include "modecluster/matrix.hpp"
#include "modecluster/meanshift.hpp"
#include "modecluster/metrics.hpp"
#include "modecluster/parallel.hpp"

namespace py = pybind11;
namespace mc = modecluster;

namespace {

using DoubleArray =
    py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray =
    py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

mc::DataMatrix to_matrix(const DoubleArray& arr) {
  if (arr.ndim() == 1) {
    // 1D input is a column of scalars.
    std::vector<double> values(arr.data(), arr.data() + arr.size());
    return mc::DataMatrix(static_cast<std::size_t>(arr.size()), 1,
                          std::move(values));
  }
  if (arr.ndim() != 2) {
    throw py::value_error("expected a 1D or 2D float array");
  }
  std::vector<double> values(arr.data(), arr.data() + arr.size());
  return mc::DataMatrix(static_cast<std::size_t>(arr.shape(0)),
                        static_cast<std::size_t>(arr.shape(1)),
                        std::move(values));
}

py::array_t<double> to_array(const mc::DataMatrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(
      std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

mc::Labels to_labels(const IntArray& arr) {
  mc::Labels labels;
  labels.assignment.reserve(static_cast<std::size_t>(arr.size()));
  std::int64_t max_label = -1;
  for (py::ssize_t i = 0; i < arr.size(); ++i) {
    const std::int64_t v = arr.data()[i];
    if (v < 0) throw py::value_error("labels must be nonnegative");
    labels.assignment.push_back(static_cast<int>(v));
    max_label = std::max(max_label, v);
  }
  labels.k_count = static_cast<int>(max_label + 1);
  return labels;
}

py::array_t<std::int64_t> labels_to_array(const mc::Labels& labels) {
  py::array_t<std::int64_t> out(std::vector<py::ssize_t>{
      static_cast<py::ssize_t>(labels.assignment.size())});
  std::copy(labels.assignment.begin(), labels.assignment.end(),
            out.mutable_data());
  return out;
}

py::dict kmeans_result_to_dict(const mc::KMeansResult& r) {
  py::dict d;
  d["centroids"] = to_array(r.centroids);
  d["labels"] = labels_to_array(r.labels);
  d["objective"] = r.objective;
  d["iters"] = r.iters;
  d["objective_trace"] = to_array(r.objective_trace);
  d["restart_objectives"] = to_array(r.restart_objectives);
  d["best_restart"] = r.best_restart;
  return d;
}

py::dict kmodes_result_to_dict(const mc::KModesResult& r) {
  py::dict d;
  d["centroids"] = to_array(r.centroids);
  d["labels"] = labels_to_array(r.labels);
  d["objective"] = r.objective;
  py::list path;
  for (const auto& c : r.centroid_path) path.append(to_array(c));
  d["centroid_path"] = path;
  py::list trace;
  for (const auto& e : r.objective_trace) {
    trace.append(py::make_tuple(e.sigma, e.iter, e.objective));
  }
  d["objective_trace"] = trace;
  d["init"] = kmeans_result_to_dict(r.init);
  d["empty_cluster_events"] = r.diagnostics.empty_cluster_events;
  d["nonconverged_mode_steps"] = r.diagnostics.nonconverged_mode_steps;
  return d;
}

mc::KModesConfig make_kmodes_config(int k, int restarts, int max_iters,
                                    std::uint64_t seed, int j_iters,
                                    int i_iters, double ms_tol) {
  mc::KModesConfig cfg;
  cfg.k = k;
  cfg.inner_ms_iters = i_iters;
  cfg.iters_per_sigma = j_iters;
  cfg.ms_tol = ms_tol;
  cfg.kmeans = mc::KMeansConfig{k, restarts, max_iters, seed};
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "K-modes clustering by per-cluster kernel-density mode seeking, with "
      "K-means and Gaussian mean-shift baselines";

  // datasets
  m.def(
      "gen_gaussian_blobs",
      [](const DoubleArray& centers, const std::vector<std::size_t>& counts,
         double stddev, std::uint64_t seed) {
        const auto g = mc::gen_gaussian_blobs(to_matrix(centers), counts,
                                              stddev, seed);
        return py::make_tuple(to_array(g.data), labels_to_array(g.labels));
      },
      py::arg("centers"), py::arg("points_per_center"), py::arg("stddev"),
      py::arg("seed") = 0,
      "Isotropic Gaussian samples around each center row; returns (data, "
      "labels).");
  m.def(
      "gen_two_moons",
      [](std::size_t n_per_moon, double noise, std::uint64_t seed) {
        const auto g = mc::gen_two_moons(n_per_moon, noise, seed);
        return py::make_tuple(to_array(g.data), labels_to_array(g.labels));
      },
      py::arg("n_per_moon") = 500, py::arg("noise") = 0.1, py::arg("seed") = 0,
      "Two interleaved noisy half circles; returns (data, labels).");
  m.def(
      "gen_degree_mixture",
      [](std::size_t n_gauss, double gauss_mean, double gauss_std,
         std::size_t n_power, double power_exponent, double power_xmin,
         std::uint64_t seed) {
        const mc::DegreeMixtureSpec spec{n_gauss,        gauss_mean,
                                         gauss_std,      n_power,
                                         power_exponent, power_xmin,
                                         seed};
        const auto g = mc::gen_degree_mixture(spec);
        return py::make_tuple(to_array(g.data), labels_to_array(g.labels),
                              g.warnings);
      },
      py::arg("n_gauss") = 1000, py::arg("gauss_mean") = 19.8,
      py::arg("gauss_std") = 4.45, py::arg("n_power") = 3000,
      py::arg("power_exponent") = 1.5, py::arg("power_xmin") = 100.0,
      py::arg("seed") = 0,
      "1D rounded Gaussian + Pareto mixture; returns (data, labels, "
      "warnings).");

  // kernel / kde
  m.def("kernel_g", &mc::kernel_g, py::arg("t"),
        "Unnormalized Gaussian kernel exp(-t/2).");
  m.def(
      "kde_eval",
      [](const DoubleArray& support, double sigma, const DoubleArray& x,
         bool normalized) {
        const auto matrix = to_matrix(support);
        const mc::Kde kde(matrix, sigma);
        std::vector<double> point(x.data(), x.data() + x.size());
        return mc::kde_eval(kde, point, normalized);
      },
      py::arg("support"), py::arg("sigma"), py::arg("x"),
      py::arg("normalized") = false);
  m.def(
      "mean_shift_step",
      [](const DoubleArray& support, double sigma, const DoubleArray& x) {
        const auto matrix = to_matrix(support);
        const mc::Kde kde(matrix, sigma);
        std::vector<double> point(x.data(), x.data() + x.size());
        const auto step = mc::mean_shift_step(kde, point);
        return py::make_tuple(to_array(step.point),
                              to_array(step.responsibilities));
      },
      py::arg("support"), py::arg("sigma"), py::arg("x"),
      "One mean-shift update; returns (x_new, responsibilities).");
  m.def(
      "mode_seek",
      [](const DoubleArray& support, double sigma, const DoubleArray& x0,
         double tol, int max_iters) {
        const auto matrix = to_matrix(support);
        const mc::Kde kde(matrix, sigma);
        std::vector<double> start(x0.data(), x0.data() + x0.size());
        const auto r = mc::mode_seek(kde, start, {tol, max_iters});
        return py::make_tuple(to_array(r.mode), r.iters, r.converged);
      },
      py::arg("support"), py::arg("sigma"), py::arg("x0"),
      py::arg("tol") = 1e-8, py::arg("max_iters") = 1000,
      "Mean-shift to convergence; returns (mode, iters, converged).");

  // kmeans
  m.def(
      "kmeans_objective",
      [](const DoubleArray& data, const IntArray& labels,
         const DoubleArray& centroids) {
        auto l = to_labels(labels);
        const auto c = to_matrix(centroids);
        l.k_count = static_cast<int>(c.rows());
        return mc::kmeans_objective(to_matrix(data), l, c);
      },
      py::arg("data"), py::arg("labels"), py::arg("centroids"));
  m.def(
      "assign_nearest",
      [](const DoubleArray& data, const DoubleArray& centroids) {
        return labels_to_array(
            mc::assign_nearest(to_matrix(data), to_matrix(centroids)));
      },
      py::arg("data"), py::arg("centroids"));
  m.def(
      "kmeans",
      [](const DoubleArray& data, int k, int restarts, int max_iters,
         std::uint64_t seed) {
        return kmeans_result_to_dict(mc::kmeans_run(
            to_matrix(data), mc::KMeansConfig{k, restarts, max_iters, seed}));
      },
      py::arg("data"), py::arg("k"), py::arg("restarts") = 20,
      py::arg("max_iters") = 300, py::arg("seed") = 0,
      "Lloyd's algorithm, best of `restarts` seeded initializations.");

  // kmodes
  m.def(
      "kmodes_objective",
      [](const DoubleArray& data, const IntArray& labels,
         const DoubleArray& centroids, double sigma) {
        auto l = to_labels(labels);
        const auto c = to_matrix(centroids);
        l.k_count = static_cast<int>(c.rows());
        return mc::kmodes_objective(to_matrix(data), l, c, sigma);
      },
      py::arg("data"), py::arg("labels"), py::arg("centroids"),
      py::arg("sigma"));
  m.def(
      "make_schedule",
      [](double sigma_start, double sigma_target, int steps) {
        return to_array(
            mc::make_schedule(sigma_start, sigma_target, steps).sigmas);
      },
      py::arg("sigma_start"), py::arg("sigma_target"), py::arg("steps"),
      "Geometric bandwidth sequence from sigma_start down to sigma_target.");
  m.def(
      "kmodes",
      [](const DoubleArray& data, int k, const std::vector<double>& schedule,
         int restarts, int max_iters, std::uint64_t seed, int j_iters,
         int i_iters, double ms_tol) {
        mc::HomotopySchedule s{schedule};
        return kmodes_result_to_dict(mc::kmodes_run(
            to_matrix(data), s,
            make_kmodes_config(k, restarts, max_iters, seed, j_iters, i_iters,
                               ms_tol)));
      },
      py::arg("data"), py::arg("k"), py::arg("schedule"),
      py::arg("restarts") = 20, py::arg("max_iters") = 300,
      py::arg("seed") = 0, py::arg("j_iters") = 2, py::arg("i_iters") = 100,
      py::arg("ms_tol") = 1e-8,
      "Homotopy K-modes over a decreasing bandwidth schedule, initialized "
      "from the best K-means restart.");
  m.def(
      "kmodes_fixed",
      [](const DoubleArray& data, int k, double sigma, int restarts,
         int max_iters, std::uint64_t seed, int j_iters, int i_iters,
         double ms_tol) {
        return kmodes_result_to_dict(mc::kmodes_fixed_run(
            to_matrix(data), sigma,
            make_kmodes_config(k, restarts, max_iters, seed, j_iters, i_iters,
                               ms_tol)));
      },
      py::arg("data"), py::arg("k"), py::arg("sigma"), py::arg("restarts") = 20,
      py::arg("max_iters") = 300, py::arg("seed") = 0, py::arg("j_iters") = 2,
      py::arg("i_iters") = 100, py::arg("ms_tol") = 1e-8,
      "Fixed-bandwidth K-modes run to a stable assignment.");

  // meanshift
  m.def(
      "gms_cluster",
      [](const DoubleArray& data, double sigma, double tol, int max_iters,
         double merge_radius_factor) {
        mc::GmsConfig cfg;
        cfg.sigma = sigma;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        cfg.merge_radius_factor = merge_radius_factor;
        const auto r = mc::gms_cluster(to_matrix(data), cfg);
        py::dict d;
        d["modes"] = to_array(r.modes);
        d["labels"] = labels_to_array(r.labels);
        d["mode_count"] = r.labels.k_count;
        d["iters_total"] = r.iters_total;
        d["nonconverged_seeds"] = r.nonconverged_seeds;
        return d;
      },
      py::arg("data"), py::arg("sigma"), py::arg("tol") = 1e-8,
      py::arg("max_iters") = 1000, py::arg("merge_radius_factor") = 1e-2,
      "Gaussian mean-shift clustering of every point on the whole-data kde.");
  m.def(
      "gms_mode_count_scan",
      [](const DoubleArray& data, double sigma_lo, double sigma_hi, int steps,
         int target_k) {
        const auto r = mc::gms_mode_count_scan(to_matrix(data), sigma_lo,
                                               sigma_hi, steps, target_k);
        py::list entries;
        for (const auto& e : r.entries) {
          entries.append(py::make_tuple(e.sigma, e.mode_count));
        }
        return py::make_tuple(entries,
                              r.sigma_for_target
                                  ? py::cast(*r.sigma_for_target)
                                  : py::none().cast<py::object>());
      },
      py::arg("data"), py::arg("sigma_lo"), py::arg("sigma_hi"),
      py::arg("steps"), py::arg("target_k"),
      "Mode counts over a geometric bandwidth grid; returns (entries, sigma "
      "achieving target_k or None).");

  // bandwidth + metrics
  m.def(
      "knn_avg_bandwidth",
      [](const DoubleArray& data, int k) {
        return mc::knn_avg_bandwidth(to_matrix(data), k);
      },
      py::arg("data"), py::arg("k") = 10,
      "Mean distance to the k-th nearest neighbor.");
  m.def(
      "adjusted_rand_index",
      [](const IntArray& a, const IntArray& b) {
        return mc::adjusted_rand_index(to_labels(a), to_labels(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "normalized_mutual_information",
      [](const IntArray& a, const IntArray& b) {
        return mc::normalized_mutual_information(to_labels(a), to_labels(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "contingency",
      [](const IntArray& a, const IntArray& b) {
        const auto t = mc::contingency(to_labels(a), to_labels(b));
        py::array_t<std::int64_t> out(
            {t.counts.size(), t.counts.front().size()});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < t.counts.size(); ++i) {
          for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) =
                t.counts[i][j];
          }
        }
        return out;
      },
      py::arg("a"), py::arg("b"));

  // utilities
  m.def(
      "bounding_box_diagonal",
      [](const DoubleArray& data) {
        return mc::bounding_box_diagonal(to_matrix(data));
      },
      py::arg("data"));
  m.def(
      "load_csv",
      [](const std::filesystem::path& path, bool has_header) {
        return to_array(mc::load_csv(path, has_header));
      },
      py::arg("path"), py::arg("has_header") = false);
  m.def(
      "save_csv",
      [](const DoubleArray& data, const std::filesystem::path& path) {
        mc::save_csv(to_matrix(data), path);
      },
      py::arg("data"), py::arg("path"));
  m.def("set_max_threads", &mc::set_max_threads, py::arg("n"),
        "Worker thread cap; 0 restores the default.");

#define MC_STRINGIFY(x) #x
#define MC_MACRO_STRINGIFY(x) MC_STRINGIFY(x)
#ifdef MODECLUSTER_VERSION
  m.attr("__version__") = MC_MACRO_STRINGIFY(MODECLUSTER_VERSION);
#else
  m.attr("__version__") = "dev";
#endif
}
