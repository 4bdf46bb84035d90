#pragma once

#include <cstdint>
#include <vector>

#include "modecluster/kmeans.hpp"
#include "modecluster/matrix.hpp"

namespace modecluster {

struct KModesConfig {
  int k = 2;
  // Cap I on mean-shift iterations per mode step; the step stops earlier
  // when ms_tol is met. Finite-termination of the fixed-sigma loop is only
  // guaranteed when the mode step runs to tolerance, so the default cap is
  // generous.
  int inner_ms_iters = 100;
  int iters_per_sigma = 2;  // J outer iterations per schedule value
  double ms_tol = 1e-8;
  int max_outer_iters = 500;  // fixed-sigma run cap
  KMeansConfig kmeans;        // its k field is overridden by this k
};

// Strictly decreasing positive bandwidth sequence sigma_1 > ... > sigma_T.
struct HomotopySchedule {
  std::vector<double> sigmas;
  void validate() const;
};

// Geometric sequence of `steps` values from sigma_start down to sigma_target
// (both included; steps == 1 gives just sigma_target).
HomotopySchedule make_schedule(double sigma_start, double sigma_target,
                               int steps);

struct KModesTraceEntry {
  double sigma = 0.0;
  int iter = 0;  // 0 is the value on entering this sigma
  double objective = 0.0;
};

struct KModesDiagnostics {
  long empty_cluster_events = 0;
  long nonconverged_mode_steps = 0;  // mode steps that hit the I cap
};

struct KModesResult {
  Labels labels;
  Centroids centroids;
  double objective = 0.0;  // L of eq. (4) at the final sigma
  std::vector<Centroids> centroid_path;  // one snapshot per schedule value
  std::vector<KModesTraceEntry> objective_trace;
  KMeansResult init;
  KModesDiagnostics diagnostics;
};

// L(R, C) = sum over points of the kernel value to the assigned centroid
// (unnormalized G), the objective being maximized.
double kmodes_objective(const DataMatrix& data, const Labels& labels,
                        const Centroids& centroids, double sigma);

struct KModesIterResult {
  Labels labels;
  Centroids centroids;
  double objective = 0.0;
  int empty_clusters = 0;
  int nonconverged_mode_steps = 0;
};

// One outer iteration at fixed sigma: (a) assign each point to its nearest
// centroid (independent of sigma), then (b) move each nonempty cluster's
// centroid by mean-shift on the kde of its assigned points, for at most
// cfg.inner_ms_iters iterations or until cfg.ms_tol. Empty clusters keep
// their centroid and are flagged.
KModesIterResult kmodes_fixed_sigma_iter(const DataMatrix& data,
                                         const Labels& labels,
                                         const Centroids& centroids,
                                         double sigma,
                                         const KModesConfig& cfg);

// Homotopy driver: initialize from the best K-means restart (the sigma = inf
// limit), then run cfg.iters_per_sigma fixed-sigma iterations per schedule
// value. Deterministic given the K-means initialization.
KModesResult kmodes_run(const DataMatrix& data,
                        const HomotopySchedule& schedule,
                        const KModesConfig& cfg);

// Single-sigma variant: K-means init, then fixed-sigma iterations until the
// labels repeat and the largest centroid displacement is <= ms_tol * sigma,
// or cfg.max_outer_iters.
KModesResult kmodes_fixed_run(const DataMatrix& data, double sigma,
                              const KModesConfig& cfg);

}  // namespace modecluster
