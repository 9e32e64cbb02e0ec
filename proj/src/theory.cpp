#include "corrmat/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrmat {

Predictions predict(const Kernel& kernel, double theta, int n) {
  if (theta <= 0.0) throw std::invalid_argument("theta must be > 0");
  Predictions p;
  p.center = 2.0 * n * theta;
  double axis_sum = 0.0;
  for (const auto& [lag, val] : kernel.values) {
    if (lag.v == 0) axis_sum += val;  // R(i, 0)
    if (lag.u == 0) axis_sum += val;  // R(0, i); R(0,0) counted in both
  }
  p.alpha = axis_sum / (2.0 * theta);
  p.sigma2 = 4.0 * kernel.total_sum;
  p.degenerate = (kernel.total_sum == 0.0);
  return p;
}

double exact_var_quad(const Kernel& kernel, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  double s = 0.0;
  for (const auto& [lag, val] : kernel.values) {
    if (std::abs(lag.u) >= n || std::abs(lag.v) >= n) continue;
    s += static_cast<double>(n - std::abs(lag.u)) * (n - std::abs(lag.v)) * val;
  }
  return 4.0 * s;
}

std::int64_t triple_overlap_count(int n, int u, int v) {
  // j ranges over [1,n] with i = j+u and k = j-v both in [1,n]
  int lo = std::max({1, 1 - u, 1 + v});
  int hi = std::min({n, n - u, n + v});
  return hi >= lo ? hi - lo + 1 : 0;
}

double exact_mean_w2(const Kernel& kernel, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  double axis = 0.0;
  for (const auto& [lag, val] : kernel.values) {
    if (lag.v == 0 && std::abs(lag.u) < n) axis += (n - std::abs(lag.u)) * val;
    if (lag.u == 0 && std::abs(lag.v) < n) axis += (n - std::abs(lag.v)) * val;
  }
  double cross = 0.0;
  for (const auto& [lag, val] : kernel.values) {
    cross += static_cast<double>(triple_overlap_count(n, lag.u, lag.v)) * val;
  }
  return n * axis + 2.0 * cross;
}

double exact_var_quadform(const Kernel& kernel, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  auto lag_product = [&](int shift) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      int j = i + shift;
      if (j >= 0 && j < n) s += x[i] * x[j];
    }
    return s;
  };
  double total = 0.0;
  for (const auto& [lag, val] : kernel.values) {
    total += val * lag_product(lag.u) * lag_product(lag.v);
  }
  return 4.0 * total;
}

}  // namespace corrmat
