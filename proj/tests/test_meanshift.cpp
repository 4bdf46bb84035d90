#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "modecluster/kde.hpp"
#include "modecluster/meanshift.hpp"
#include "modecluster/metrics.hpp"
#include "modecluster/rng.hpp"

using namespace modecluster;

TEST_CASE("a single point is its own mode") {
  const auto data = DataMatrix::from_rows({{2.0, -1.0}});
  GmsConfig cfg;
  cfg.sigma = 0.5;
  const auto r = gms_cluster(data, cfg);
  CHECK(r.labels.k_count == 1);
  CHECK(r.modes(0, 0) == doctest::Approx(2.0));
  CHECK(r.modes(0, 1) == doctest::Approx(-1.0));
}

TEST_CASE("{0, 2}: one merged mode at sigma 2, two modes at sigma 0.2") {
  const auto pair = DataMatrix::from_rows({{0.0}, {2.0}});

  GmsConfig wide;
  wide.sigma = 2.0;
  const auto one = gms_cluster(pair, wide);
  CHECK(one.labels.k_count == 1);
  const auto gmax = mctest::grid_argmax(pair, 2.0, {-1.0}, {3.0}, 1e-4);
  CHECK(std::abs(gmax[0] - 1.0) <= 1e-4);
  CHECK(std::abs(one.modes(0, 0) - 1.0) <= 1e-6);
  CHECK(one.labels.assignment == std::vector<int>{0, 0});

  GmsConfig narrow;
  narrow.sigma = 0.2;
  const auto two = gms_cluster(pair, narrow);
  CHECK(two.labels.k_count == 2);
  CHECK(std::abs(two.modes(0, 0) - 0.0) <= 1e-6);
  CHECK(std::abs(two.modes(1, 0) - 2.0) <= 1e-6);
}

TEST_CASE("near-coincident seeds merge into one mode") {
  const auto data = DataMatrix::from_rows({{0.0}, {0.01}, {2.0}});
  GmsConfig cfg;
  cfg.sigma = 0.5;
  const auto r = gms_cluster(data, cfg);
  CHECK(r.labels.assignment[0] == r.labels.assignment[1]);
}

TEST_CASE("every reported mode is a fixed point at tolerance scale") {
  for (int rep = 0; rep < 6; ++rep) {
    const auto ds = mctest::random_blobs(600 + rep, 60, 2, 3);
    GmsConfig cfg;
    cfg.sigma = 0.3 + 0.2 * rep;
    const auto r = gms_cluster(ds.data, cfg);
    Kde kde(ds.data, cfg.sigma);
    for (std::size_t m = 0; m < r.modes.rows(); ++m) {
      const auto step = mean_shift_step(kde, r.modes.row(m));
      CHECK(euclidean_distance(std::span<const double>(step.point),
                               r.modes.row(m)) < cfg.tol * cfg.sigma);
    }
    // labels partition the data with every cluster nonempty
    CHECK(r.labels.k_count == static_cast<int>(r.modes.rows()));
    for (std::size_t s : r.labels.cluster_sizes()) CHECK(s >= 1);
  }
}

TEST_CASE("row permutation changes nothing up to relabeling") {
  const auto ds = mctest::random_blobs(700, 50, 2, 3);
  GmsConfig cfg;
  cfg.sigma = 0.6;
  const auto base = gms_cluster(ds.data, cfg);

  Rng rng(8);
  const auto perm = rng.sample_without_replacement(ds.data.rows(),
                                                   ds.data.rows());
  DataMatrix shuffled(ds.data.rows(), ds.data.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t d = 0; d < ds.data.cols(); ++d) {
      shuffled(i, d) = ds.data(perm[i], d);
    }
  }
  const auto moved = gms_cluster(shuffled, cfg);
  CHECK(moved.labels.k_count == base.labels.k_count);
  Labels unshuffled{std::vector<int>(ds.data.rows(), 0), moved.labels.k_count};
  for (std::size_t i = 0; i < perm.size(); ++i) {
    unshuffled.assignment[perm[i]] = moved.labels.assignment[i];
  }
  CHECK(adjusted_rand_index(base.labels, unshuffled) == doctest::Approx(1.0));
}

TEST_CASE("seed deduplication is invisible in the results") {
  const auto data = DataMatrix::from_rows(
      {{0.0}, {0.0}, {0.0}, {1.0}, {1.0}, {5.0}, {5.0}, {6.0}});
  GmsConfig with;
  with.sigma = 0.8;
  with.dedupe_identical_seeds = true;
  GmsConfig without = with;
  without.dedupe_identical_seeds = false;
  const auto a = gms_cluster(data, with);
  const auto b = gms_cluster(data, without);
  CHECK(a.labels.assignment == b.labels.assignment);
  CHECK(a.modes.values() == b.modes.values());
  CHECK(a.iters_total <= b.iters_total);
}

TEST_CASE("mode count scan over a geometric grid") {
  const auto pair = DataMatrix::from_rows({{0.0}, {2.0}});
  const auto scan = gms_mode_count_scan(pair, 0.1, 10.0, 20, 2);
  REQUIRE(scan.entries.size() == 20);
  CHECK(scan.entries.front().sigma == 0.1);
  CHECK(scan.entries.back().sigma == 10.0);
  for (std::size_t i = 1; i < scan.entries.size(); ++i) {
    CHECK(scan.entries[i].sigma > scan.entries[i - 1].sigma);
  }
  CHECK(scan.entries.back().mode_count == 1);
  REQUIRE(scan.sigma_for_target.has_value());
  CHECK(*scan.sigma_for_target < 1.0);

  // target_k = N with a tiny lower bound: the smallest sigma qualifies
  const auto singletons = gms_mode_count_scan(pair, 1e-3, 1.0, 5, 2);
  CHECK(singletons.entries.front().mode_count == 2);
  REQUIRE(singletons.sigma_for_target.has_value());

  // no qualifying sigma
  const auto none = gms_mode_count_scan(pair, 0.1, 10.0, 8, 7);
  CHECK_FALSE(none.sigma_for_target.has_value());

  CHECK_THROWS_AS(gms_mode_count_scan(pair, 1.0, 0.5, 5, 2),
                  std::invalid_argument);
}
