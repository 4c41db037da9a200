#pragma once

#include <cstdint>
#include <vector>

#include "magicflow/error.hpp"

namespace magicflow {

struct LabeledScores {
  std::vector<double> scores;
  std::vector<bool> labels;
};

// Rank-statistic AUC with half-credit for ties. Throws OneClassOnly.
double auc(const LabeledScores& data);

// Product-moment correlation. Throws DegenerateVariance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Pearson on mid-ranks (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> midranks(const std::vector<double>& v);

// Coefficient of determination of a least-squares fit with intercept.
// `features` holds one column per predictor. Throws SingularDesign,
// DegenerateVariance.
double ols_r2(const std::vector<std::vector<double>>& features,
              const std::vector<double>& target);

// Fitted values of the same least-squares model, usable as a combined
// score for multi-feature AUC.
std::vector<double> ols_fitted(const std::vector<std::vector<double>>& features,
                               const std::vector<double>& target);

struct BootstrapCi {
  double mean = 0.0;
  double lo95 = 0.0;
  double hi95 = 0.0;
};

// Percentile (nearest-rank) bootstrap CI for the mean of paired
// differences; deterministic in seed.
BootstrapCi paired_bootstrap_mean_ci(const std::vector<double>& diffs,
                                     int resamples, std::uint64_t seed);

// r = 2U/(n_a * n_b) - 1, U counting a-over-b wins plus half-ties.
// Throws EmptySample.
double mann_whitney_rank_biserial(const std::vector<double>& a,
                                  const std::vector<double>& b);

}  // namespace magicflow
