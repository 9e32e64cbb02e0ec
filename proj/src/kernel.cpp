#include "corrmat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace corrmat {

namespace {

void check_finite(const LagMap& m, const char* what) {
  for (const auto& [lag, val] : m) {
    if (!std::isfinite(val)) {
      throw std::invalid_argument(std::string(what) + " has non-finite value at lag (" +
                                  std::to_string(lag.u) + "," + std::to_string(lag.v) + ")");
    }
  }
}

Kernel finalize(LagMap values) {
  Kernel k;
  k.values = std::move(values);
  for (const auto& [lag, val] : k.values) {
    k.abs_sum += std::abs(val);
    k.total_sum += val;
  }
  return k;
}

}  // namespace

int MAFilter::radius() const {
  int r = 0;
  for (const auto& [lag, val] : coeffs) {
    r = std::max({r, std::abs(lag.u), std::abs(lag.v)});
  }
  return r;
}

double MAFilter::coeff_sum() const {
  double s = 0.0;
  for (const auto& [lag, val] : coeffs) s += val;
  return s;
}

double Kernel::at(int u, int v) const {
  auto it = values.find(Lag{u, v});
  return it == values.end() ? 0.0 : it->second;
}

int Kernel::radius() const {
  int r = 0;
  for (const auto& [lag, val] : values) {
    r = std::max({r, std::abs(lag.u), std::abs(lag.v)});
  }
  return r;
}

Kernel kernel_from_ma(const MAFilter& filter) {
  if (filter.coeffs.empty()) throw std::invalid_argument("empty MA filter");
  check_finite(filter.coeffs, "MA filter");
  bool any_nonzero = false;
  for (const auto& [lag, val] : filter.coeffs) any_nonzero |= (val != 0.0);
  if (!any_nonzero) throw std::invalid_argument("MA filter is identically zero");

  // R(u,v) = sum_{s,t} a(s,t) a(s+u, t+v); support is the difference box.
  LagMap values;
  for (const auto& [p, ap] : filter.coeffs) {
    for (const auto& [q, aq] : filter.coeffs) {
      values[Lag{q.u - p.u, q.v - p.v}] += ap * aq;
    }
  }
  // Drop exact zeros produced by cancellation, keeping the origin.
  for (auto it = values.begin(); it != values.end();) {
    if (it->second == 0.0 && !(it->first == Lag{0, 0})) {
      it = values.erase(it);
    } else {
      ++it;
    }
  }
  return finalize(std::move(values));
}

Kernel kernel_explicit(const LagMap& values) {
  if (values.empty()) throw std::invalid_argument("empty kernel table");
  check_finite(values, "kernel");
  for (const auto& [lag, val] : values) {
    auto mate = values.find(Lag{-lag.u, -lag.v});
    if (mate == values.end() || mate->second != val) {
      throw std::invalid_argument("kernel table not symmetric under lag negation at (" +
                                  std::to_string(lag.u) + "," + std::to_string(lag.v) + ")");
    }
  }
  if (values.count(Lag{0, 0}) && values.at(Lag{0, 0}) < 0.0) {
    throw std::invalid_argument("kernel origin value R(0,0) must be nonnegative");
  }
  return finalize(values);
}

ValidityReport validate_kernel(const Kernel& kernel, int embed_size) {
  const int m = embed_size;
  if (m < 2 || (m & (m - 1)) != 0) {
    throw std::invalid_argument("embed_size must be a power of two >= 2");
  }
  if (m < 2 * kernel.radius() + 2) {
    throw std::invalid_argument("embed_size too small for kernel support");
  }

  ValidityReport rep;
  rep.embed_size = m;
  rep.tol = 1e-9 * kernel.abs_sum;

  // Direct evaluation of the torus spectrum; the imaginary part cancels
  // because R(u,v) = R(-u,-v).
  const double w = 2.0 * std::numbers::pi / m;
  double min_spec = std::numeric_limits<double>::infinity();
  for (int k1 = 0; k1 < m; ++k1) {
    for (int k2 = 0; k2 < m; ++k2) {
      double s = 0.0;
      for (const auto& [lag, val] : kernel.values) {
        s += val * std::cos(w * (k1 * lag.u + k2 * lag.v));
      }
      min_spec = std::min(min_spec, s);
    }
  }
  rep.min_spectral = min_spec;
  rep.valid = (min_spec >= -rep.tol);
  return rep;
}

Kernel truncate_kernel(const Kernel& kernel, double eps) {
  if (eps < 0.0) throw std::invalid_argument("truncation eps must be >= 0");

  // Candidate symmetry pairs sorted by joint absolute mass, smallest first.
  struct Pair {
    Lag a, b;
    double mass;
  };
  std::vector<Pair> pairs;
  for (const auto& [lag, val] : kernel.values) {
    if (lag == Lag{0, 0}) continue;  // origin is never dropped
    Lag neg{-lag.u, -lag.v};
    if (neg < lag) continue;  // each unordered pair once; self-paired lags included
    double mass = std::abs(val) + (lag == neg ? 0.0 : std::abs(kernel.at(neg.u, neg.v)));
    pairs.push_back({lag, neg, mass});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.mass != y.mass) return x.mass < y.mass;
    return x.a < y.a;
  });

  LagMap kept = kernel.values;
  double budget = eps;
  for (const auto& p : pairs) {
    if (p.mass > budget) break;
    budget -= p.mass;
    kept.erase(p.a);
    kept.erase(p.b);
  }
  return finalize(std::move(kept));
}

}  // namespace corrmat
