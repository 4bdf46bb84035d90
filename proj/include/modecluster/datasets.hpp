#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modecluster/matrix.hpp"

namespace modecluster {

// Generator output: points, the generating component of each point
// (k_count = number of nonempty components), and any warnings raised while
// sampling. All generators are pure functions of their parameters and seed.
struct GeneratedDataset {
  DataMatrix data;
  Labels labels;
  std::vector<std::string> warnings;
};

// Isotropic Gaussian samples around each center row. Draw order: centers in
// row order, points in order, coordinates in order.
GeneratedDataset gen_gaussian_blobs(const DataMatrix& centers,
                                    const std::vector<std::size_t>& points_per_center,
                                    double stddev, std::uint64_t seed);

// Two interleaved half circles of radius 1: the upper half circle centered at
// (0, 0) and the lower half circle centered at (1, 0.5). Angles are uniform
// random in [0, pi]; isotropic Gaussian noise is added. Draw order per point:
// angle, then the two noise coordinates; moon 0 first.
GeneratedDataset gen_two_moons(std::size_t n_per_moon, double noise,
                               std::uint64_t seed);

// 1D mixture of a rounded truncated Gaussian and a rounded Pareto component,
// shaped like the degree distribution of a graph that is the union of an
// Erdos-Renyi part and a power-law part. Defaults match mean degrees
// 2*9918/1000 and 2*506489/3000 of such a graph.
struct DegreeMixtureSpec {
  std::size_t n_gauss = 1000;
  double gauss_mean = 19.8;
  double gauss_std = 4.45;  // ~sqrt(mean), Poisson-like degree spread
  std::size_t n_power = 3000;
  double power_exponent = 1.5;
  double power_xmin = 100.0;
  std::uint64_t seed = 0;
};

// Gaussian samples are redrawn until >= 1 (clamped after 100 attempts) and
// rounded; Pareto samples are rounded and redrawn while they exceed the
// simple-graph degree bound n_gauss + n_power - 1. Draw order: all Gaussian
// samples, then all Pareto samples. exponent <= 1 (infinite mean) is allowed
// but reported as a warning.
GeneratedDataset gen_degree_mixture(const DegreeMixtureSpec& spec);

}  // namespace modecluster
