#ifndef CORRMAT_THEORY_HPP
#define CORRMAT_THEORY_HPP

#include <cstdint>
#include <vector>

#include "corrmat/kernel.hpp"

namespace corrmat {

// Asymptotic constants of the limit law for lambda_1 - 2 n theta.
struct Predictions {
  double center = 0.0;   // 2 n theta
  double alpha = 0.0;    // (1/2theta) sum_i (R(i,0) + R(0,i))
  double sigma2 = 0.0;   // 4 sum R(u,v)
  bool degenerate = false;  // total_sum == 0: the centered statistic -> 0
};

Predictions predict(const Kernel& kernel, double theta, int n);

// Exact Var(1' W 1) = 4 sum (n-|u|)(n-|v|) R(u,v).
double exact_var_quad(const Kernel& kernel, int n);

// Exact E(1' W^2 1) from the finite-n triple-overlap counts.
double exact_mean_w2(const Kernel& kernel, int n);

// #{(i,j,k) in [1,n]^3 : i-j = u, j-k = v}
std::int64_t triple_overlap_count(int n, int u, int v);

// Exact Var(x' W x) = 4 sum_{u,v} R(u,v) (sum_i x_i x_{i+u}) (sum_j x_j x_{j+v}),
// out-of-range entries of x treated as zero.
double exact_var_quadform(const Kernel& kernel, const std::vector<double>& x);

}  // namespace corrmat

#endif
