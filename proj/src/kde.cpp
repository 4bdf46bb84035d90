#include "modecluster/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace modecluster {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dim(const Kde& kde, std::span<const double> x) {
  if (x.size() != kde.dim()) {
    throw std::invalid_argument("kde: point dimension does not match support");
  }
}

// ||(a - b)/sigma||^2 computed on scaled differences, so tiny or subnormal
// sigma yields inf (never 0 * inf = NaN) and coincident points yield 0.
double scaled_squared_distance(std::span<const double> a,
                               std::span<const double> b, double inv_sigma,
                               double sigma) {
  double s = 0.0;
  if (std::isfinite(inv_sigma)) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = (a[i] - b[i]) * inv_sigma;
      s += d * d;
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = (a[i] - b[i]) / sigma;
      s += d * d;
    }
  }
  return s;
}
}  // namespace

double kernel_g(double t) {
  if (t < 0.0 || std::isnan(t)) {
    throw std::invalid_argument("kernel_g: argument must be >= 0");
  }
  return std::exp(-0.5 * t);
}

Kde::Kde(const DataMatrix& support, double sigma)
    : data_(&support), sigma_(sigma) {
  if (support.empty()) {
    throw std::invalid_argument("Kde: support must be nonempty");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("Kde: sigma must be positive and finite");
  }
}

Kde::Kde(const DataMatrix& support, std::vector<std::size_t> subset,
         double sigma)
    : data_(&support), subset_(std::move(subset)), sigma_(sigma) {
  if (support.empty() || subset_.empty()) {
    throw std::invalid_argument("Kde: support must be nonempty");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("Kde: sigma must be positive and finite");
  }
  for (std::size_t i : subset_) {
    if (i >= support.rows()) {
      throw std::invalid_argument("Kde: subset index out of range");
    }
  }
}

double kde_eval(const Kde& kde, std::span<const double> x, bool normalized) {
  check_dim(kde, x);
  const std::size_t n = kde.size();
  const double inv_sigma = 1.0 / kde.sigma();

  // log-sum-exp with a max shift
  double m = kNegInf;
  std::vector<double> exponents(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = -0.5 * scaled_squared_distance(x, kde.point(i), inv_sigma,
                                                    kde.sigma());
    exponents[i] = e;
    m = std::max(m, e);
  }
  double value = 0.0;
  if (m != kNegInf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(exponents[i] - m);
    value = std::exp(m) * s / static_cast<double>(n);
  }
  if (normalized) {
    value *= std::pow(2.0 * std::numbers::pi * kde.sigma() * kde.sigma(),
                      -0.5 * static_cast<double>(kde.dim()));
  }
  return value;
}

namespace detail {

void mean_shift_step_into(const Kde& kde, std::span<const double> x,
                          std::span<double> resp, std::span<double> x_new) {
  const std::size_t n = kde.size();
  const std::size_t dim = kde.dim();
  const double inv_sigma = 1.0 / kde.sigma();

  double m = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    resp[i] = -0.5 * scaled_squared_distance(x, kde.point(i), inv_sigma,
                                             kde.sigma());
    m = std::max(m, resp[i]);
  }

  if (m == kNegInf) {
    // Every exponent overflowed to -inf (sigma far below the point
    // separations). The softmax limit is uniform weight on the nearest
    // support points, so place it there.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double d2 = squared_distance(x, kde.point(i));
      resp[i] = d2;
      best = std::min(best, d2);
    }
    double count = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      resp[i] = (resp[i] == best) ? 1.0 : 0.0;
      count += resp[i];
    }
    for (std::size_t i = 0; i < n; ++i) resp[i] /= count;
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      resp[i] = std::exp(resp[i] - m);
      s += resp[i];
    }
    for (std::size_t i = 0; i < n; ++i) resp[i] /= s;
  }

  std::fill(x_new.begin(), x_new.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = resp[i];
    if (w == 0.0) continue;
    const auto p = kde.point(i);
    for (std::size_t d = 0; d < dim; ++d) x_new[d] += w * p[d];
  }
}

}  // namespace detail

MeanShiftStep mean_shift_step(const Kde& kde, std::span<const double> x) {
  check_dim(kde, x);
  MeanShiftStep step;
  step.point.resize(kde.dim());
  step.responsibilities.resize(kde.size());
  detail::mean_shift_step_into(kde, x, step.responsibilities, step.point);
  return step;
}

ModeSeekResult mode_seek(const Kde& kde, std::span<const double> x0,
                         const ModeSeekConfig& cfg) {
  check_dim(kde, x0);
  if (!(cfg.tol > 0.0) || cfg.max_iters < 1) {
    throw std::invalid_argument("mode_seek: tol must be > 0, max_iters >= 1");
  }
  ModeSeekResult result;
  result.mode.assign(x0.begin(), x0.end());
  std::vector<double> resp(kde.size());
  std::vector<double> next(kde.dim());
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    detail::mean_shift_step_into(kde, result.mode, resp, next);
    double step2 = 0.0;
    double norm2 = 0.0;
    for (std::size_t d = 0; d < kde.dim(); ++d) {
      const double diff = next[d] - result.mode[d];
      step2 += diff * diff;
      norm2 += result.mode[d] * result.mode[d];
    }
    result.mode.assign(next.begin(), next.end());
    result.iters = iter;
    const double guard =
        cfg.tol * std::max(kde.sigma(), std::sqrt(norm2));
    if (std::sqrt(step2) <= guard) {
      result.converged = true;
      return result;
    }
  }
  result.converged = false;
  return result;
}

}  // namespace modecluster
