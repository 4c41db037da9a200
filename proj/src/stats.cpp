#include "magicflow/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "magicflow/rng.hpp"

namespace magicflow {

double auc(const LabeledScores& data) {
  if (data.scores.size() != data.labels.size())
    throw Error("InvalidParams", "scores/labels length mismatch");
  std::size_t n = data.scores.size();
  std::size_t n_pos = 0;
  for (bool l : data.labels) n_pos += l ? 1 : 0;
  std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw Error("OneClassOnly", "AUC requires both classes");

  // U statistic via rank sums; ties share mid-ranks.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data.scores[a] < data.scores[b];
  });
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && data.scores[order[j]] == data.scores[order[i]]) ++j;
    double midrank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t k = i; k < j; ++k)
      if (data.labels[order[k]]) pos_rank_sum += midrank;
    i = j;
  }
  double u = pos_rank_sum -
             static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error("InvalidParams", "pearson needs two equal-length samples, n >= 2");
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error("DegenerateVariance", "zero variance input");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> midranks(const std::vector<double>& v) {
  std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && v[order[j]] == v[order[i]]) ++j;
    double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = midrank;
    i = j;
  }
  return ranks;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(midranks(x), midranks(y));
}

namespace {

Eigen::MatrixXd design_matrix(const std::vector<std::vector<double>>& features,
                              const std::vector<double>& target) {
  std::size_t n = target.size();
  std::size_t k = features.size();
  if (n < k + 2)
    throw Error("InvalidParams", "need rows >= columns + 1");
  for (const auto& col : features)
    if (col.size() != n)
      throw Error("InvalidParams", "feature column length mismatch");
  Eigen::MatrixXd design(n, k + 1);
  for (std::size_t r = 0; r < n; ++r) {
    design(r, 0) = 1.0;
    for (std::size_t c = 0; c < k; ++c) design(r, c + 1) = features[c][r];
  }
  return design;
}

Eigen::VectorXd ols_solve(const Eigen::MatrixXd& design,
                          const std::vector<double>& target) {
  Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(target.data(), target.size());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols())
    throw Error("SingularDesign", "linearly dependent design columns");
  return qr.solve(y);
}

}  // namespace

double ols_r2(const std::vector<std::vector<double>>& features,
              const std::vector<double>& target) {
  Eigen::MatrixXd design = design_matrix(features, target);
  Eigen::VectorXd beta = ols_solve(design, target);
  Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(target.data(), target.size());
  Eigen::VectorXd resid = y - design * beta;
  double mean = y.mean();
  double sst = (y.array() - mean).square().sum();
  if (sst == 0.0) throw Error("DegenerateVariance", "constant target");
  return 1.0 - resid.squaredNorm() / sst;
}

std::vector<double> ols_fitted(const std::vector<std::vector<double>>& features,
                               const std::vector<double>& target) {
  Eigen::MatrixXd design = design_matrix(features, target);
  Eigen::VectorXd beta = ols_solve(design, target);
  Eigen::VectorXd fit = design * beta;
  return std::vector<double>(fit.data(), fit.data() + fit.size());
}

BootstrapCi paired_bootstrap_mean_ci(const std::vector<double>& diffs,
                                     int resamples, std::uint64_t seed) {
  if (diffs.empty()) throw Error("InvalidParams", "empty sample");
  if (resamples < 1) throw Error("InvalidParams", "resamples must be >= 1");
  std::size_t n = diffs.size();
  BootstrapCi ci;
  ci.mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) /
            static_cast<double>(n);
  SplitMix64 rng(seed);
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += diffs[rng.next_below(n)];
    m = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  auto nearest_rank = [&](double q) {
    std::size_t r = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(resamples)));
    if (r < 1) r = 1;
    return means[r - 1];
  };
  ci.lo95 = nearest_rank(0.025);
  ci.hi95 = nearest_rank(0.975);
  return ci;
}

double mann_whitney_rank_biserial(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw Error("EmptySample", "both samples must be nonempty");
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> ranks = midranks(pooled);
  double a_rank_sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) a_rank_sum += ranks[i];
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double u = a_rank_sum - na * (na + 1) / 2.0;  // a-over-b wins + half-ties
  return 2.0 * u / (na * nb) - 1.0;
}

}  // namespace magicflow
