#include "modecluster/datasets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "modecluster/rng.hpp"

namespace modecluster {

GeneratedDataset gen_gaussian_blobs(
    const DataMatrix& centers, const std::vector<std::size_t>& points_per_center,
    double stddev, std::uint64_t seed) {
  if (centers.empty()) {
    throw std::invalid_argument("gen_gaussian_blobs: need at least one center");
  }
  if (points_per_center.size() != centers.rows()) {
    throw std::invalid_argument(
        "gen_gaussian_blobs: one count per center required");
  }
  for (std::size_t c : points_per_center) {
    if (c == 0) {
      throw std::invalid_argument("gen_gaussian_blobs: counts must be >= 1");
    }
  }
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("gen_gaussian_blobs: stddev must be > 0");
  }

  std::size_t total = 0;
  for (std::size_t c : points_per_center) total += c;
  const std::size_t dim = centers.cols();

  GeneratedDataset out{DataMatrix(total, dim), {}, {}};
  out.labels.k_count = static_cast<int>(centers.rows());
  out.labels.assignment.reserve(total);

  Rng rng(seed);
  std::size_t row = 0;
  for (std::size_t k = 0; k < centers.rows(); ++k) {
    for (std::size_t i = 0; i < points_per_center[k]; ++i, ++row) {
      for (std::size_t d = 0; d < dim; ++d) {
        out.data(row, d) = centers(k, d) + stddev * rng.normal();
      }
      out.labels.assignment.push_back(static_cast<int>(k));
    }
  }
  return out;
}

GeneratedDataset gen_two_moons(std::size_t n_per_moon, double noise,
                               std::uint64_t seed) {
  if (n_per_moon == 0) {
    throw std::invalid_argument("gen_two_moons: n_per_moon must be >= 1");
  }
  if (noise < 0.0) {
    throw std::invalid_argument("gen_two_moons: noise must be >= 0");
  }

  GeneratedDataset out{DataMatrix(2 * n_per_moon, 2), {}, {}};
  out.labels.k_count = 2;
  out.labels.assignment.assign(2 * n_per_moon, 0);

  Rng rng(seed);
  for (std::size_t moon = 0; moon < 2; ++moon) {
    for (std::size_t i = 0; i < n_per_moon; ++i) {
      const std::size_t row = moon * n_per_moon + i;
      const double t = rng.uniform(0.0, std::numbers::pi);
      const double nx = noise * rng.normal();
      const double ny = noise * rng.normal();
      if (moon == 0) {
        out.data(row, 0) = std::cos(t) + nx;
        out.data(row, 1) = std::sin(t) + ny;
      } else {
        out.data(row, 0) = 1.0 - std::cos(t) + nx;
        out.data(row, 1) = 0.5 - std::sin(t) + ny;
      }
      out.labels.assignment[row] = static_cast<int>(moon);
    }
  }
  return out;
}

GeneratedDataset gen_degree_mixture(const DegreeMixtureSpec& spec) {
  if (spec.n_gauss + spec.n_power == 0) {
    throw std::invalid_argument("gen_degree_mixture: need at least one sample");
  }
  if (spec.gauss_std < 0.0) {
    throw std::invalid_argument("gen_degree_mixture: gauss_std must be >= 0");
  }
  if (spec.n_power > 0 && !(spec.power_xmin > 0.0)) {
    throw std::invalid_argument("gen_degree_mixture: power_xmin must be > 0");
  }

  const std::size_t total = spec.n_gauss + spec.n_power;
  GeneratedDataset out{DataMatrix(total, 1), {}, {}};

  if (spec.n_power > 0 && spec.power_exponent <= 1.0) {
    out.warnings.push_back(
        "power_exponent <= 1 gives an infinite-mean tail; samples may be "
        "extreme");
  }

  Rng rng(spec.seed);
  std::size_t row = 0;
  for (std::size_t i = 0; i < spec.n_gauss; ++i, ++row) {
    double v = rng.normal(spec.gauss_mean, spec.gauss_std);
    for (int attempt = 0; v < 1.0 && attempt < 100; ++attempt) {
      v = rng.normal(spec.gauss_mean, spec.gauss_std);
    }
    if (v < 1.0) v = 1.0;  // truncation floor
    out.data(row, 0) = std::round(v);
  }
  // Degrees of a simple graph on n_gauss + n_power vertices cannot exceed
  // total - 1; Pareto draws above that bound are redrawn.
  const double degree_cap = static_cast<double>(total - 1);
  for (std::size_t i = 0; i < spec.n_power; ++i, ++row) {
    double v = rng.pareto(spec.power_exponent, spec.power_xmin);
    for (int attempt = 0; v > degree_cap && attempt < 1000; ++attempt) {
      v = rng.pareto(spec.power_exponent, spec.power_xmin);
    }
    if (v > degree_cap) v = degree_cap;
    out.data(row, 0) = std::round(v);
  }

  // Component ids skip empty components so every label is populated.
  out.labels.k_count = (spec.n_gauss > 0 ? 1 : 0) + (spec.n_power > 0 ? 1 : 0);
  out.labels.assignment.reserve(total);
  const int power_label = spec.n_gauss > 0 ? 1 : 0;
  for (std::size_t i = 0; i < spec.n_gauss; ++i) {
    out.labels.assignment.push_back(0);
  }
  for (std::size_t i = 0; i < spec.n_power; ++i) {
    out.labels.assignment.push_back(power_label);
  }
  return out;
}

}  // namespace modecluster
