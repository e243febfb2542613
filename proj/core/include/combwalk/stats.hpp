#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace combwalk::stats {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  /// Half-width of the normal-approximation 95% interval.
  double ci95 = 0.0;
};
Summary summarize(std::span<const double> xs);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
/// Ordinary least squares y ~ a + b x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);
/// Fit of log y against log x.
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

/// Upper-tail p-value of Pearson's chi-square statistic for observed counts
/// against expected probabilities; cells are used as given.
double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected_prob);

/// Total variation distance between two probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

/// One-sided Mann-Whitney U test of H1: X tends to exceed Y, normal
/// approximation with tie correction. Returns the p-value.
double mann_whitney_greater(std::span<const double> x, std::span<const double> y);

/// One-sided sign test for paired samples, H1: x_i > y_i more often
/// (ties dropped). Exact binomial p-value.
double sign_test_greater(std::span<const double> x, std::span<const double> y);

double normal_quantile(double p);

}  // namespace combwalk::stats
