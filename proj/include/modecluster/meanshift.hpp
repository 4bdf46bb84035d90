#pragma once

#include <optional>
#include <vector>

#include "modecluster/matrix.hpp"

namespace modecluster {

struct GmsConfig {
  double sigma = 1.0;
  double tol = 1e-8;
  int max_iters = 1000;
  // Converged locations closer than merge_radius_factor * sigma are merged
  // (single linkage), matching the mode-seek tolerance scale.
  double merge_radius_factor = 1e-2;
  // Seeds with identical coordinates follow identical trajectories, so each
  // distinct start is traced once. Results are bit-identical either way.
  bool dedupe_identical_seeds = true;
};

struct GmsResult {
  Centroids modes;  // M x D, each a converged fixed point of the kde
  Labels labels;    // k_count = M; every cluster nonempty
  long iters_total = 0;
  int nonconverged_seeds = 0;  // treated as converged at their final location
};

// Gaussian mean-shift clustering: mode-seek from every data point on the
// whole-data kde, merge converged locations, and after merging polish each
// mode until its own step is below tol * sigma. Intentionally the naive
// O(N^2 D)-per-iteration algorithm.
GmsResult gms_cluster(const DataMatrix& data, const GmsConfig& cfg);

struct GmsScanEntry {
  double sigma = 0.0;
  int mode_count = 0;
};

struct GmsScanResult {
  std::vector<GmsScanEntry> entries;  // ascending sigma
  // Largest grid sigma with exactly target_k modes, if any. Mode count need
  // not be monotone in sigma; the scan only reports counts.
  std::optional<double> sigma_for_target;
};

// Runs gms_cluster over a geometric sigma grid of `steps` values spanning
// [sigma_lo, sigma_hi].
GmsScanResult gms_mode_count_scan(const DataMatrix& data, double sigma_lo,
                                  double sigma_hi, int steps, int target_k,
                                  const GmsConfig& base = {});

}  // namespace modecluster
