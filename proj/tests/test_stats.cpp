#include <doctest.h>

#include <cmath>

#include "magicflow/rng.hpp"
#include "magicflow/stats.hpp"

using namespace magicflow;

namespace {

// Naive O(n^2) pair-counting AUC used as an oracle.
double auc_brute(const LabeledScores& data) {
  double wins = 0.0;
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < data.scores.size(); ++i) {
    if (!data.labels[i]) continue;
    for (std::size_t j = 0; j < data.scores.size(); ++j) {
      if (data.labels[j]) continue;
      ++pairs;
      if (data.scores[i] > data.scores[j])
        wins += 1.0;
      else if (data.scores[i] == data.scores[j])
        wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("auc golden examples") {
  CHECK(auc({{0.1, 0.9}, {false, true}}) == doctest::Approx(1.0));
  CHECK(auc({{0.3, 0.3, 0.3, 0.3}, {true, false, true, false}}) ==
        doctest::Approx(0.5));
  CHECK(auc({{1, 2, 3, 4}, {true, false, true, false}}) ==
        doctest::Approx(0.25));
  CHECK_THROWS_AS(auc({{1, 2}, {true, true}}), Error);
}

TEST_CASE("auc matches the brute-force oracle and is monotone-invariant") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    LabeledScores data;
    int n = 3 + static_cast<int>(rng.next_below(20));
    bool saw_pos = false, saw_neg = false;
    for (int i = 0; i < n; ++i) {
      data.scores.push_back(static_cast<double>(rng.next_below(6)));
      bool label = rng.next_below(2) == 1;
      data.labels.push_back(label);
      (label ? saw_pos : saw_neg) = true;
    }
    if (!saw_pos || !saw_neg) continue;
    double fast = auc(data);
    CHECK(fast == doctest::Approx(auc_brute(data)));
    // Strictly increasing transform leaves AUC unchanged.
    LabeledScores transformed = data;
    for (auto& s : transformed.scores) s = std::exp(s) + 3.0;
    CHECK(auc(transformed) == doctest::Approx(fast));
  }
}

TEST_CASE("pearson") {
  CHECK(pearson({1, 2, 3}, {3, 5, 7}) == doctest::Approx(1.0));
  CHECK(pearson({1, 2, 3}, {-1, -2, -3}) == doctest::Approx(-1.0));
  CHECK(pearson({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), Error);
}

TEST_CASE("spearman") {
  CHECK(spearman({1, 2, 3}, {std::exp(1.0), std::exp(2.0), std::exp(3.0)}) ==
        doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8));
  // Invariant under strictly increasing transforms of either argument.
  CHECK(spearman({1, 10, 100, 1000}, {1, 3, 2, 4}) == doctest::Approx(0.8));
}

TEST_CASE("midranks average ties") {
  CHECK(midranks({10, 20, 20, 30}) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
}

TEST_CASE("ols_r2") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{3, 5, 7, 9, 11};  // exactly affine in x
  CHECK(ols_r2({x}, y) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ols_r2({x, x}, y), Error);

  // Pure-noise feature: R^2 near zero for large n.
  SplitMix64 rng(7);
  std::vector<double> noise, target;
  for (int i = 0; i < 2000; ++i) {
    noise.push_back(rng.next_double());
    target.push_back(rng.next_double());
  }
  CHECK(ols_r2({noise}, target) < 0.05);

  // Appending a feature never decreases R^2.
  std::vector<double> y2{3, 6, 6, 10, 11};
  double one = ols_r2({x}, y2);
  double two = ols_r2({x, {1, 0, 1, 0, 1}}, y2);
  CHECK(two >= one - 1e-12);
}

TEST_CASE("ols_fitted reproduces an affine target") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> y{2, 4, 6, 8};
  auto fit = ols_fitted({x}, y);
  REQUIRE(fit.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(fit[i] == doctest::Approx(y[i]));
}

TEST_CASE("paired bootstrap CI") {
  auto degenerate = paired_bootstrap_mean_ci(
      std::vector<double>(20, 0.007), 1000, 1);
  CHECK(degenerate.mean == doctest::Approx(0.007));
  CHECK(degenerate.lo95 == doctest::Approx(0.007));
  CHECK(degenerate.hi95 == doctest::Approx(0.007));

  auto symmetric = paired_bootstrap_mean_ci({-1.0, 1.0}, 10000, 2);
  CHECK(symmetric.lo95 <= 0.0);
  CHECK(symmetric.hi95 >= 0.0);

  auto a = paired_bootstrap_mean_ci({0.1, 0.5, -0.2, 0.3}, 5000, 9);
  auto b = paired_bootstrap_mean_ci({0.1, 0.5, -0.2, 0.3}, 5000, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.lo95 == b.lo95);
  CHECK(a.hi95 == b.hi95);
}

TEST_CASE("mann_whitney_rank_biserial") {
  CHECK(mann_whitney_rank_biserial({10, 11, 12}, {1, 2, 3}) ==
        doctest::Approx(1.0));
  CHECK(mann_whitney_rank_biserial({1, 2, 3}, {1, 2, 3}) ==
        doctest::Approx(0.0));
  // Brute-force pair counting: only (3, 2) is an a-over-b win, so U = 1
  // and r = 2*1/4 - 1.
  CHECK(mann_whitney_rank_biserial({1, 3}, {2, 4}) == doctest::Approx(-0.5));
  CHECK(mann_whitney_rank_biserial({1, 2, 3}, {10, 11, 12}) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(mann_whitney_rank_biserial({}, {1.0}), Error);
}
