#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "modecluster/metrics.hpp"
#include "modecluster/rng.hpp"

using namespace modecluster;

namespace {
Labels make_labels(std::vector<int> a) {
  int k = 0;
  for (int v : a) k = std::max(k, v + 1);
  return Labels{std::move(a), k};
}
}  // namespace

TEST_CASE("contingency tables") {
  const auto same = contingency(make_labels({0, 0, 1, 1}),
                                make_labels({0, 0, 1, 1}));
  CHECK(same.counts == std::vector<std::vector<long>>{{2, 0}, {0, 2}});

  const auto t = contingency(make_labels({0, 0, 1, 1}),
                             make_labels({0, 1, 1, 1}));
  CHECK(t.counts == std::vector<std::vector<long>>{{1, 1}, {0, 2}});
  CHECK(t.row_sums == std::vector<long>{2, 2});
  CHECK(t.col_sums == std::vector<long>{1, 3});
  CHECK(t.total == 4);

  CHECK_THROWS_AS(contingency(make_labels({0, 1}), make_labels({0})),
                  std::invalid_argument);
}

TEST_CASE("ARI hand values and degenerate conventions") {
  CHECK(adjusted_rand_index(make_labels({0, 0, 1, 1}),
                            make_labels({0, 0, 1, 1})) == 1.0);
  CHECK(adjusted_rand_index(make_labels({0, 0, 1, 1}),
                            make_labels({0, 1, 0, 1})) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(adjusted_rand_index(make_labels({0, 0, 0}), make_labels({0, 0, 0})) ==
        1.0);
  CHECK(adjusted_rand_index(make_labels({0, 1, 2}), make_labels({2, 0, 1})) ==
        1.0);
  CHECK(adjusted_rand_index(make_labels({0, 0, 0, 0}),
                            make_labels({0, 0, 1, 1})) == 0.0);
}

TEST_CASE("ARI is symmetric and invariant to relabeling") {
  const auto a = make_labels({0, 0, 1, 1, 2, 2, 0});
  const auto b = make_labels({1, 1, 0, 0, 2, 2, 2});
  const auto b_renamed = make_labels({2, 2, 1, 1, 0, 0, 0});
  CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));
  CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(a, b_renamed));
}

TEST_CASE("NMI hand values and degenerate conventions") {
  CHECK(normalized_mutual_information(make_labels({0, 0, 1, 1}),
                                      make_labels({0, 0, 1, 1})) == 1.0);
  CHECK(normalized_mutual_information(make_labels({0, 0, 1, 1}),
                                      make_labels({0, 1, 0, 1})) == 0.0);
  CHECK(normalized_mutual_information(make_labels({0, 0, 0}),
                                      make_labels({0, 0, 0})) == 1.0);
  CHECK(normalized_mutual_information(make_labels({0, 0, 0, 0}),
                                      make_labels({0, 0, 1, 1})) == 0.0);

  const std::vector<int> a{0, 0, 1, 1};
  const std::vector<int> b{0, 1, 1, 1};
  CHECK(normalized_mutual_information(make_labels(a), make_labels(b)) ==
        doctest::Approx(mctest::entropy_nmi(a, b)).epsilon(1e-13));
}

TEST_CASE("both metrics match brute-force oracles on random pairs") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.next_u64() % 99;
    const int ka = 1 + static_cast<int>(rng.next_u64() % 5);
    const int kb = 1 + static_cast<int>(rng.next_u64() % 5);
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng.next_u64() % ka);
      b[i] = static_cast<int>(rng.next_u64() % kb);
    }
    const double ari = adjusted_rand_index(make_labels(a), make_labels(b));
    const double nmi =
        normalized_mutual_information(make_labels(a), make_labels(b));
    CHECK(std::abs(ari - mctest::pair_counting_ari(a, b)) <= 1e-12);
    CHECK(std::abs(nmi - mctest::entropy_nmi(a, b)) <= 1e-12);
    CHECK(ari >= -1.0);
    CHECK(ari <= 1.0);
    CHECK(nmi >= 0.0);
    CHECK(nmi <= 1.0);
  }
}

TEST_CASE("ARI against random permutations is chance-corrected") {
  Rng rng(77);
  std::vector<int> base(100);
  for (std::size_t i = 0; i < base.size(); ++i) {
    base[i] = static_cast<int>(i % 4);
  }
  const auto a = make_labels(base);
  double sum = 0.0, sum2 = 0.0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const auto perm = rng.sample_without_replacement(base.size(), base.size());
    std::vector<int> shuffled(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      shuffled[i] = base[perm[i]];
    }
    const double ari = adjusted_rand_index(a, make_labels(shuffled));
    sum += ari;
    sum2 += ari * ari;
  }
  const double mean = sum / trials;
  const double var = (sum2 - trials * mean * mean) / (trials - 1);
  const double se = std::sqrt(var / trials);
  CHECK(std::abs(mean) <= 3.0 * se);
}
