#ifndef CORRMAT_MATRIX_HPP
#define CORRMAT_MATRIX_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "corrmat/sampler.hpp"

namespace corrmat {

// Dense symmetric matrix, full row-major storage.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;

  explicit SymMatrix(int size = 0) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

struct EigResult {
  double lambda = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  int iterations = 0;
};

struct EigFailure : std::runtime_error {
  EigResult best;
  explicit EigFailure(EigResult b)
      : std::runtime_error("eigensolver did not converge"), best(std::move(b)) {}
};

inline constexpr int kDenseCap = 256;
inline constexpr double kDefaultEigTol = 1e-10;
inline constexpr int kKrylovCap = 200;

// A(i,j) = Z_ij + Z_ji
SymMatrix build_a(const FieldSample& sample);
// W(i,j) = A(i,j) - 2*theta = X_ij + X_ji
SymMatrix build_w(const FieldSample& sample);

// y = M x; OpenMP over rows, each row reduced serially (bit-deterministic
// for any thread count)
void matvec(const SymMatrix& m, const double* x, double* y);
// serial reference kept for testing and benchmarking
void matvec_serial(const SymMatrix& m, const double* x, double* y);

double quad_ones(const SymMatrix& m);    // 1' M 1
double quad_ones_sq(const SymMatrix& m); // 1' M^2 1 = ||M 1||^2, O(n^2)

// Lanczos with full reorthogonalization, restarted every kKrylovCap
// vectors; converges when ||Mv - lambda v|| <= tol * |lambda_est|.
// start_seed derives the deterministic pseudo-random start vector.
EigResult largest_eigenvalue(const SymMatrix& m, double tol = kDefaultEigTol,
                             int max_iter = 0, std::uint64_t start_seed = 0);

// max(lambda_max(M), lambda_max(-M))
double operator_norm(const SymMatrix& m, double tol = kDefaultEigTol,
                     std::uint64_t start_seed = 0, int* iterations = nullptr);

// Dense full-spectrum oracle (n <= kDenseCap).
EigResult dense_largest_eigenvalue(const SymMatrix& m);
double dense_operator_norm(const SymMatrix& m);

}  // namespace corrmat

#endif
