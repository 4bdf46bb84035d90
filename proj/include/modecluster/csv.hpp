#pragma once

#include <filesystem>

#include "modecluster/matrix.hpp"

namespace modecluster {

// Comma-separated values, LF line endings, optional single header line.
// Parse failures name the 1-based file row and column.
DataMatrix load_csv(const std::filesystem::path& path, bool has_header = false);

// Decimal text with full round-trip precision (17 significant digits), one
// row per line.
void save_csv(const DataMatrix& data, const std::filesystem::path& path);

// Labels files hold one integer per line; k_count is the max label + 1.
Labels load_labels(const std::filesystem::path& path);
void save_labels(const Labels& labels, const std::filesystem::path& path);

// Per-sigma centroid snapshots with header sigma,cluster,dim_0..dim_{D-1}.
void save_centroid_path(const std::vector<double>& sigmas,
                        const std::vector<Centroids>& path,
                        const std::filesystem::path& out);

}  // namespace modecluster
