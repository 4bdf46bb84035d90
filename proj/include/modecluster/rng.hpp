#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace modecluster {

// Deterministic 64-bit generator shared by every stochastic operation in the
// library. The raw mt19937_64 stream is fully specified by the standard, and
// the distributions below are implemented here rather than via <random>
// distribution objects (whose output is implementation-defined), so a given
// seed produces byte-identical streams on every platform. Each method states
// how many engine words it consumes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // One engine word.
  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits; one engine word.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; exactly two engine words per call.
  double normal();

  double normal(double mean, double stddev) {
    return mean + stddev * normal();
  }

  // Pareto by inverse CDF, support [xmin, inf); one engine word.
  double pareto(double exponent, double xmin);

  // First k entries of a Fisher-Yates shuffle of {0, ..., n-1}; k engine
  // words.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace modecluster
