#ifndef CORRMAT_KERNEL_HPP
#define CORRMAT_KERNEL_HPP

#include <map>
#include <optional>
#include <string>

namespace corrmat {

// Integer lag (u, v) on the 2D index lattice.
struct Lag {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Lag&, const Lag&) = default;
};

using LagMap = std::map<Lag, double>;

// Finite moving-average filter a(s,t). Convolving an iid standard normal
// grid with it yields a stationary field whose covariance is positive
// semidefinite by construction.
struct MAFilter {
  LagMap coeffs;

  int radius() const;
  double coeff_sum() const;
};

// Stationary covariance kernel R(u,v) with finite support.
// R(u,v) = R(-u,-v) always holds; R(u,v) = R(v,u) is NOT assumed.
struct Kernel {
  LagMap values;
  double abs_sum = 0.0;
  double total_sum = 0.0;

  double at(int u, int v) const;
  double origin_value() const { return at(0, 0); }
  // max over support of max(|u|, |v|)
  int radius() const;
  bool empty() const { return values.empty(); }
};

struct FieldParams {
  double theta = 0.0;  // mean of the field, must be > 0 for predictions
  Kernel kernel;
  std::optional<MAFilter> ma;  // present when the kernel was MA-derived
};

struct ValidityReport {
  int embed_size = 0;
  double min_spectral = 0.0;
  double tol = 0.0;
  bool valid = false;
};

// R(u,v) = sum_{s,t} a(s,t) a(s+u, t+v). Throws on an empty filter.
Kernel kernel_from_ma(const MAFilter& filter);

// Builds a kernel from an explicit lag table. Requires exact symmetry
// R(u,v) = R(-u,-v); throws naming the offending lag otherwise.
Kernel kernel_explicit(const LagMap& values);

// Wraps the kernel onto an embed_size x embed_size torus and reports the
// minimum value of its discrete Fourier transform. embed_size must be a
// power of two with embed_size >= 2*radius + 2.
ValidityReport validate_kernel(const Kernel& kernel, int embed_size);

// Drops entries whose total removed absolute mass is <= eps, keeping
// (u,v)/(-u,-v) pairs together. The origin entry is never dropped.
Kernel truncate_kernel(const Kernel& kernel, double eps);

}  // namespace corrmat

#endif
