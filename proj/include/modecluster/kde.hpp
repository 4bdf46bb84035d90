#pragma once

#include <span>
#include <vector>

#include "modecluster/matrix.hpp"

namespace modecluster {

// Unnormalized Gaussian kernel exp(-t/2), t >= 0. Assignments, modes and all
// argmax structure are invariant to the dropped normalizing constant.
double kernel_g(double t);

// Kernel density estimate over a set of support points with a shared
// bandwidth. The support is a non-owning view of a DataMatrix, optionally
// restricted to a row subset (a cluster). The referenced matrix must outlive
// the Kde. Exact duplicate support points are allowed.
class Kde {
 public:
  Kde(const DataMatrix& support, double sigma);
  Kde(const DataMatrix& support, std::vector<std::size_t> subset,
      double sigma);

  std::size_t size() const {
    return subset_.empty() ? data_->rows() : subset_.size();
  }
  std::size_t dim() const { return data_->cols(); }
  double sigma() const { return sigma_; }
  std::span<const double> point(std::size_t i) const {
    return data_->row(subset_.empty() ? i : subset_[i]);
  }

 private:
  const DataMatrix* data_;
  std::vector<std::size_t> subset_;  // empty means all rows
  double sigma_;
};

struct ModeSeekConfig {
  double tol = 1e-8;    // relative step tolerance
  int max_iters = 1000;
};

// Density (1/N) sum_n exp(-||(x - x_n)/sigma||^2 / 2), computed with a
// max-shifted exponent sum. `normalized` multiplies in the Gaussian constant
// (2 pi sigma^2)^(-D/2) for plotting; everything else in the library uses the
// unnormalized convention.
double kde_eval(const Kde& kde, std::span<const double> x,
                bool normalized = false);

struct MeanShiftStep {
  std::vector<double> point;             // responsibility-weighted mean
  std::vector<double> responsibilities;  // simplex over the support
};

// One fixed-point update x <- sum_n p(n|x) x_n. Responsibilities are the
// max-shifted softmax of -||(x - x_n)/sigma||^2 / 2; the output lies in the
// convex hull of the support.
MeanShiftStep mean_shift_step(const Kde& kde, std::span<const double> x);

struct ModeSeekResult {
  std::vector<double> mode;
  int iters = 0;
  bool converged = false;
};

// Iterates mean_shift_step until the step norm is <= tol * max(sigma, ||x||)
// or max_iters. The kde value is nondecreasing along the iterate sequence.
// Non-convergence is reported via the flag, never an error.
ModeSeekResult mode_seek(const Kde& kde, std::span<const double> x0,
                         const ModeSeekConfig& cfg = {});

namespace detail {
// Allocation-free worker. resp and x_new must have kde.size() and kde.dim()
// elements; x and x_new may not alias.
void mean_shift_step_into(const Kde& kde, std::span<const double> x,
                          std::span<double> resp, std::span<double> x_new);
}  // namespace detail

}  // namespace modecluster
