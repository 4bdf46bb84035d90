#include "modecluster/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace modecluster {

double Rng::normal() {
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::pareto(double exponent, double xmin) {
  if (xmin <= 0.0) {
    throw std::invalid_argument("pareto: xmin must be > 0");
  }
  if (exponent <= 0.0) {
    throw std::invalid_argument("pareto: exponent must be > 0");
  }
  const double u = 1.0 - uniform();  // (0, 1]
  return xmin * std::pow(u, -1.0 / exponent);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n,
                                                         std::size_t k) {
  if (k > n) {
    throw std::invalid_argument(
        "sample_without_replacement: k exceeds population");
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(next_u64() % (n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace modecluster
