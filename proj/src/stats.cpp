#include "corrmat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace corrmat {

double normal_cdf(double x) {
  // erfc is accurate to ~1 ulp across the tail, well inside the 1e-12 budget
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile argument must be in (0,1)");
  // bisection bracket, then Newton on normal_cdf
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  const double inv_sqrt_2pi = 0.3989422804014326779;
  for (int i = 0; i < 8; ++i) {
    double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    if (pdf <= 0.0) break;
    double step = (normal_cdf(x) - p) / pdf;
    x -= step;
    if (std::abs(step) < 1e-13) break;
  }
  return x;
}

MomentSummary moments(const std::vector<double>& samples) {
  const std::size_t m = samples.size();
  if (m < 2) throw std::invalid_argument("moments need at least 2 samples");
  MomentSummary s;
  s.count = m;
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(m);
  double ss = 0.0;
  for (double x : samples) {
    double d = x - s.mean;
    ss += d * d;
  }
  s.variance = ss / static_cast<double>(m - 1);
  s.mean_se = std::sqrt(s.variance / static_cast<double>(m));
  s.variance_se = s.variance * std::sqrt(2.0 / static_cast<double>(m - 1));
  return s;
}

namespace {

// Kolmogorov tail series Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // dual theta-function form; the alternating series converges too
    // slowly here
    double y = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
    double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda *
                 (y + std::pow(y, 9.0) + std::pow(y, 25.0) + std::pow(y, 49.0));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_test(std::vector<double> samples, double mu, double sigma2) {
  if (sigma2 <= 0.0) {
    throw std::invalid_argument("degenerate predicted law; use concentration check instead");
  }
  const std::size_t m = samples.size();
  if (m < 100) throw std::invalid_argument("ks_test needs at least 100 samples");
  std::sort(samples.begin(), samples.end());
  const double sigma = std::sqrt(sigma2);
  const double dm = static_cast<double>(m);
  double d = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double f = normal_cdf((samples[i] - mu) / sigma);
    d = std::max(d, std::max((i + 1) / dm - f, f - i / dm));
  }
  KsResult r;
  r.statistic = d;
  r.sample_size = m;
  double sq = std::sqrt(dm);
  r.p_value = kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
  return r;
}

std::vector<std::pair<double, double>> qq_points(std::vector<double> samples, double mu,
                                                 double sigma2) {
  const std::size_t m = samples.size();
  if (m < 2) throw std::invalid_argument("qq_points need at least 2 samples");
  std::sort(samples.begin(), samples.end());
  const double sigma = std::sqrt(sigma2);
  std::vector<std::pair<double, double>> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double q = mu + sigma * normal_quantile((i + 0.5) / static_cast<double>(m));
    out.emplace_back(q, samples[i]);
  }
  return out;
}

}  // namespace corrmat
