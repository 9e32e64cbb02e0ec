#ifndef CORRMAT_SAMPLER_HPP
#define CORRMAT_SAMPLER_HPP

#include <vector>

#include "corrmat/kernel.hpp"
#include "corrmat/rng.hpp"

namespace corrmat {

// One realization of the stationary Gaussian field on an n x n window.
struct FieldSample {
  int n = 0;
  double theta = 0.0;
  std::vector<double> values;  // row-major, values[i*n + j] = Z_{ij} (0-based)

  double z(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
  // centered entry X_{ij} = Z_{ij} - theta
  double x(int i, int j) const { return z(i, j) - theta; }
};

inline constexpr int kCholeskyCap = 48;

// Exact sampler via MA convolution of an iid normal grid. Requires an
// MA-specified kernel. Cost O(n^2 |supp a|).
FieldSample sample_ma(const FieldParams& params, int n, const RngStream& rng);

// Exact reference sampler: factorizes the full n^2 x n^2 block-Toeplitz
// covariance. Only for n <= kCholeskyCap.
FieldSample sample_cholesky(const FieldParams& params, int n, const RngStream& rng);

// Exact FFT sampler via circulant embedding on a torus of power-of-two
// side >= 2*(n + radius). Requires a nonnegative embedding spectrum.
FieldSample sample_circulant(const FieldParams& params, int n, const RngStream& rng);

enum class SamplerKind { ma, cholesky, circulant };

FieldSample draw_field(SamplerKind kind, const FieldParams& params, int n, const RngStream& rng);

}  // namespace corrmat

#endif
