#pragma once

#include <cstddef>
#include <span>

#include "picrl/rng.hpp"

namespace picrl::evalstat {

// Regularized incomplete beta I_x(a, b), |error| < 1e-12 over the t-test
// range (continued-fraction evaluation).
double incomplete_beta(double a, double b, double x);

// CDF of Student's t with dof degrees of freedom.
double student_t_cdf(double t, double dof);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  double dof = 0.0;
};

// Two-sample two-sided t-test. The default pools the variance (equal
// variance assumption); equal_variance=false gives the Welch form.
// Degenerate zero-variance samples: t=0, p=1 when the means agree,
// t=+-infinity, p=0 otherwise.
TTestResult ttest_2samp(std::span<const double> a, std::span<const double> b,
                        bool equal_variance = true);

struct BootstrapResult {
  double mean_diff = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap of mean(a) - mean(b): resamples each side with
// replacement n_boot times and reads the (1-level)/2 and 1-(1-level)/2
// quantiles (linear interpolation between order statistics).
BootstrapResult bootstrap_ci(std::span<const double> a, std::span<const double> b,
                             std::size_t n_boot, double level, Rng& rng);

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // n-1 denominator

}  // namespace picrl::evalstat
