#ifndef CORRMAT_STATS_HPP
#define CORRMAT_STATS_HPP

#include <utility>
#include <vector>

namespace corrmat {

struct MomentSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double mean_se = 0.0;
  double variance = 0.0;  // unbiased
  double variance_se = 0.0;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t sample_size = 0;
};

// Standard normal CDF, absolute error <= 1e-12.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1), to 1e-10.
double normal_quantile(double p);

MomentSummary moments(const std::vector<double>& samples);

// Two-sided KS test of the samples against N(mu, sigma2), asymptotic
// p-value; requires sample size >= 100 and sigma2 > 0.
KsResult ks_test(std::vector<double> samples, double mu, double sigma2);

// (theoretical quantile, sorted sample) pairs for a Q-Q plot.
std::vector<std::pair<double, double>> qq_points(std::vector<double> samples, double mu,
                                                 double sigma2);

}  // namespace corrmat

#endif
