#include "corrmat/sampler.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "corrmat/fft.hpp"

namespace corrmat {

FieldSample sample_ma(const FieldParams& params, int n, const RngStream& rng) {
  if (!params.ma) throw std::invalid_argument("MA sampler requires MA-specified kernel");
  if (n < 1) throw std::invalid_argument("field size must be >= 1");
  const MAFilter& a = *params.ma;

  int smin = 0, smax = 0, tmin = 0, tmax = 0;
  for (const auto& [lag, val] : a.coeffs) {
    smin = std::min(smin, lag.u);
    smax = std::max(smax, lag.u);
    tmin = std::min(tmin, lag.v);
    tmax = std::max(tmax, lag.v);
  }
  const int rows = n + (smax - smin);
  const int cols = n + (tmax - tmin);

  Philox gen = rng.generator();
  std::vector<double> noise(static_cast<std::size_t>(rows) * cols);
  for (double& x : noise) x = gen.next_normal();

  FieldSample s;
  s.n = n;
  s.theta = params.theta;
  s.values.assign(static_cast<std::size_t>(n) * n, params.theta);
  for (int i = 0; i < n; ++i) {
    for (const auto& [lag, coeff] : a.coeffs) {
      const double* row = noise.data() + static_cast<std::size_t>(i + lag.u - smin) * cols;
      double* out = s.values.data() + static_cast<std::size_t>(i) * n;
      const int off = lag.v - tmin;
      for (int j = 0; j < n; ++j) out[j] += coeff * row[j + off];
    }
  }
  return s;
}

FieldSample sample_cholesky(const FieldParams& params, int n, const RngStream& rng) {
  if (n < 1) throw std::invalid_argument("field size must be >= 1");
  if (n > kCholeskyCap) throw std::invalid_argument("Cholesky sampler capped at n <= 48");
  const Kernel& k = params.kernel;
  const int d = n * n;

  // covariance of vec(Z) with entry ((i,j),(k,l)) = R(i-k, j-l)
  Eigen::MatrixXd cov(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          cov(i * n + j, p * n + q) = k.at(i - p, j - q);

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    // one jitter retry against rounding at scale
    cov.diagonal().array() += 1e-12 * k.origin_value();
    llt.compute(cov);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("kernel not positive semidefinite at size n");
    }
  }

  Philox gen = rng.generator();
  Eigen::VectorXd xi(d);
  for (int i = 0; i < d; ++i) xi(i) = gen.next_normal();
  Eigen::VectorXd z = llt.matrixL() * xi;

  FieldSample s;
  s.n = n;
  s.theta = params.theta;
  s.values.resize(d);
  for (int i = 0; i < d; ++i) s.values[i] = params.theta + z(i);
  return s;
}

FieldSample sample_circulant(const FieldParams& params, int n, const RngStream& rng) {
  if (n < 1) throw std::invalid_argument("field size must be >= 1");
  const Kernel& k = params.kernel;
  const int radius = k.radius();

  int m = 2;
  while (m < 2 * (n + radius)) m <<= 1;

  // torus spectrum by direct evaluation over the finite support
  const double w = 2.0 * std::numbers::pi / m;
  std::vector<double> spectrum(static_cast<std::size_t>(m) * m);
  const double tol = 1e-9 * k.abs_sum;
  double min_spec = 0.0;
  for (int k1 = 0; k1 < m; ++k1) {
    for (int k2 = 0; k2 < m; ++k2) {
      double s = 0.0;
      for (const auto& [lag, val] : k.values) {
        s += val * std::cos(w * (k1 * lag.u + k2 * lag.v));
      }
      min_spec = std::min(min_spec, s);
      spectrum[static_cast<std::size_t>(k1) * m + k2] = s < 0.0 ? 0.0 : s;
    }
  }
  if (min_spec < -tol) throw std::runtime_error("circulant embedding failed");

  Philox gen = rng.generator();
  std::vector<std::complex<double>> grid(static_cast<std::size_t>(m) * m);
  const double scale = 1.0 / m;  // sqrt(1 / m^2)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double amp = scale * std::sqrt(spectrum[i]);
    grid[i] = {amp * gen.next_normal(), amp * gen.next_normal()};
  }
  fft2_inplace(grid, m);

  FieldSample s;
  s.n = n;
  s.theta = params.theta;
  s.values.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.values[static_cast<std::size_t>(i) * n + j] =
          params.theta + grid[static_cast<std::size_t>(i) * m + j].real();
  return s;
}

FieldSample draw_field(SamplerKind kind, const FieldParams& params, int n, const RngStream& rng) {
  switch (kind) {
    case SamplerKind::ma: return sample_ma(params, n, rng);
    case SamplerKind::cholesky: return sample_cholesky(params, n, rng);
    case SamplerKind::circulant: return sample_circulant(params, n, rng);
  }
  throw std::logic_error("unknown sampler kind");
}

}  // namespace corrmat
