#include "corrmat/matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "corrmat/rng.hpp"

namespace corrmat {

SymMatrix build_a(const FieldSample& sample) {
  const int n = sample.n;
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = sample.z(i, j) + sample.z(j, i);
  return m;
}

SymMatrix build_w(const FieldSample& sample) {
  const int n = sample.n;
  const double shift = 2.0 * sample.theta;
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = sample.z(i, j) + sample.z(j, i) - shift;
  return m;
}

void matvec(const SymMatrix& m, const double* x, double* y) {
  const int n = m.n;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double* row = m.a.data() + static_cast<std::size_t>(i) * n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void matvec_serial(const SymMatrix& m, const double* x, double* y) {
  const int n = m.n;
  for (int i = 0; i < n; ++i) {
    const double* row = m.a.data() + static_cast<std::size_t>(i) * n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

double quad_ones(const SymMatrix& m) {
  double total = 0.0;
  for (int i = 0; i < m.n; ++i) {
    const double* row = m.a.data() + static_cast<std::size_t>(i) * m.n;
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += row[j];
    total += s;
  }
  return total;
}

double quad_ones_sq(const SymMatrix& m) {
  double total = 0.0;
  for (int i = 0; i < m.n; ++i) {
    const double* row = m.a.data() + static_cast<std::size_t>(i) * m.n;
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += row[j];
    total += s * s;
  }
  return total;
}

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  // first coordinate that is not round-off relative to the largest one
  const double cut = top * 1e-8;
  for (double x : v) {
    if (std::abs(x) > cut) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

double explicit_residual(const SymMatrix& m, double lambda, const std::vector<double>& v) {
  std::vector<double> mv(m.n);
  matvec(m, v.data(), mv.data());
  double s = 0.0;
  for (int i = 0; i < m.n; ++i) {
    double r = mv[i] - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

// Largest eigenvalue + last eigenvector component of the current
// tridiagonal T_j (alpha[0..j-1], beta[0..j-2]).
void tridiag_top(const std::vector<double>& alpha, const std::vector<double>& beta, int j,
                 double& theta, std::vector<double>& s) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
  for (int i = 0; i < j; ++i) t(i, i) = alpha[i];
  for (int i = 0; i + 1 < j; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  int top = j - 1;  // eigenvalues ascending
  theta = es.eigenvalues()(top);
  s.resize(j);
  for (int i = 0; i < j; ++i) s[i] = es.eigenvectors()(i, top);
}

}  // namespace

EigResult largest_eigenvalue(const SymMatrix& m, double tol, int max_iter,
                             std::uint64_t start_seed) {
  const int n = m.n;
  if (n < 1) throw std::invalid_argument("matrix must be nonempty");
  if (tol <= 0.0) throw std::invalid_argument("tol must be > 0");
  if (max_iter <= 0) max_iter = std::max(100, 10 * n);

  if (n == 1) {
    return EigResult{m.at(0, 0), {1.0}, 0.0, 0};
  }

  // deterministic pseudo-random start, never the ones vector
  Philox gen(mix64(start_seed ^ 0x6c616e637a6f73ULL));
  std::vector<double> start(n);
  for (double& x : start) x = gen.next_normal();
  double s0 = norm2(start);
  for (double& x : start) x /= s0;

  const int cap = std::min(kKrylovCap, n);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> work(n), ritz;

  EigResult best;
  best.lambda = -std::numeric_limits<double>::infinity();
  best.residual = std::numeric_limits<double>::infinity();
  int total_iters = 0;

  std::vector<double> v = start;
  while (total_iters < max_iter) {
    basis.clear();
    alpha.clear();
    beta.clear();
    basis.push_back(v);

    for (int j = 0; j < cap && total_iters < max_iter; ++j, ++total_iters) {
      matvec(m, basis[j].data(), work.data());
      double a = 0.0;
      for (int i = 0; i < n; ++i) a += basis[j][i] * work[i];
      alpha.push_back(a);

      // w = M v_j - alpha_j v_j - beta_{j-1} v_{j-1}, then full reorth
      for (int i = 0; i < n; ++i) work[i] -= a * basis[j][i];
      if (j > 0)
        for (int i = 0; i < n; ++i) work[i] -= beta[j - 1] * basis[j - 1][i];
      for (const auto& q : basis) {
        double d = 0.0;
        for (int i = 0; i < n; ++i) d += q[i] * work[i];
        for (int i = 0; i < n; ++i) work[i] -= d * q[i];
      }

      double b = norm2(work);
      const int jdim = j + 1;
      const bool at_end = (jdim == cap) || (jdim == n) || (b == 0.0) ||
                          (total_iters + 1 >= max_iter);
      if (at_end || jdim % 5 == 0) {
        double theta;
        tridiag_top(alpha, beta, jdim, theta, ritz);
        double est_res = b * std::abs(ritz[jdim - 1]);
        if (at_end || est_res <= tol * std::abs(theta)) {
          std::vector<double> vec(n, 0.0);
          for (int k = 0; k < jdim; ++k)
            for (int i = 0; i < n; ++i) vec[i] += ritz[k] * basis[k][i];
          double vn = norm2(vec);
          for (double& x : vec) x /= vn;
          double res = explicit_residual(m, theta, vec);
          if (theta > best.lambda || res < best.residual) {
            best.lambda = theta;
            best.vector = vec;
            best.residual = res;
          }
          if (res <= tol * std::abs(theta) || b == 0.0 || jdim == n) {
            EigResult out{theta, std::move(vec), res, total_iters + 1};
            fix_sign(out.vector);
            return out;
          }
          if (jdim == cap) {
            v = std::move(vec);  // restart from the current Ritz vector
            break;
          }
        }
      }
      if (b == 0.0) break;
      beta.push_back(b);
      for (double& x : work) x /= b;
      basis.push_back(work);
    }
  }

  // exhausted max_iter: dense fallback for small problems, else fail
  if (n <= kDenseCap) {
    EigResult r = dense_largest_eigenvalue(m);
    r.iterations = total_iters;
    return r;
  }
  best.iterations = total_iters;
  throw EigFailure(std::move(best));
}

double operator_norm(const SymMatrix& m, double tol, std::uint64_t start_seed, int* iterations) {
  EigResult top = largest_eigenvalue(m, tol, 0, start_seed);
  SymMatrix neg(m.n);
  for (std::size_t i = 0; i < m.a.size(); ++i) neg.a[i] = -m.a[i];
  EigResult bot = largest_eigenvalue(neg, tol, 0, start_seed + 1);
  if (iterations) *iterations = top.iterations + bot.iterations;
  return std::max(top.lambda, bot.lambda);
}

EigResult dense_largest_eigenvalue(const SymMatrix& m) {
  const int n = m.n;
  Eigen::MatrixXd mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat(i, j) = m.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
  EigResult r;
  r.lambda = es.eigenvalues()(n - 1);
  r.vector.resize(n);
  for (int i = 0; i < n; ++i) r.vector[i] = es.eigenvectors()(i, n - 1);
  fix_sign(r.vector);
  r.residual = explicit_residual(m, r.lambda, r.vector);
  return r;
}

double dense_operator_norm(const SymMatrix& m) {
  const int n = m.n;
  Eigen::MatrixXd mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat(i, j) = m.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat, Eigen::EigenvaluesOnly);
  return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(n - 1)));
}

}  // namespace corrmat
