#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace modecluster {

// Canned end-to-end experiments: generate a dataset, run K-means, homotopy
// K-modes and GMS with fixed per-experiment parameters, evaluate ARI/NMI
// against the generating components, and report everything in a manifest.
// Fully deterministic for a fixed seed.
//
// Known ids: three-gaussians, two-moons, degree.
struct ReproduceOptions {
  std::uint64_t seed = 1;
  std::filesystem::path outdir = ".";
  bool write_files = true;
};

std::vector<std::string> reproduce_experiment_ids();

nlohmann::json reproduce_experiment(const std::string& id,
                                    const ReproduceOptions& opts);

}  // namespace modecluster
