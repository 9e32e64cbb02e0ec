#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrmat/matrix.hpp"
#include "corrmat/theory.hpp"

using namespace corrmat;

namespace {

FieldSample make_field(int n, double theta, std::vector<double> z) {
  FieldSample s;
  s.n = n;
  s.theta = theta;
  s.values = std::move(z);
  return s;
}

SymMatrix random_symmetric(int n, Philox& gen) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.at(i, j) = m.at(j, i) = gen.next_normal();
  return m;
}

}  // namespace

TEST_CASE("build_a / build_w entrywise") {
  FieldSample s = make_field(2, 1.0, {1, 2, 3, 4});
  SymMatrix a = build_a(s);
  CHECK(a.at(0, 0) == 2.0);
  CHECK(a.at(0, 1) == 5.0);
  CHECK(a.at(1, 0) == 5.0);
  CHECK(a.at(1, 1) == 8.0);

  SymMatrix w = build_w(s);
  CHECK(w.at(0, 0) == 0.0);
  CHECK(w.at(0, 1) == 3.0);
  CHECK(w.at(1, 1) == 6.0);

  // A - W = 2 theta 1 1'
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(a.at(i, j) - w.at(i, j) == 2.0);
}

TEST_CASE("build_a: zero and antisymmetric fields") {
  CHECK(build_a(make_field(2, 3.0, {0, 0, 0, 0})).at(1, 1) == 0.0);
  SymMatrix a = build_a(make_field(2, 0.0, {0, 1, -1, 0}));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(a.at(i, j) == 0.0);
  // mean field: W = 0
  SymMatrix w = build_w(make_field(2, 2.5, {2.5, 2.5, 2.5, 2.5}));
  for (double v : w.a) CHECK(v == 0.0);
}

TEST_CASE("quad_ones and quad_ones_sq") {
  SymMatrix m(2);
  m.at(0, 0) = 1;
  m.at(0, 1) = m.at(1, 0) = 2;
  m.at(1, 1) = 1;
  CHECK(quad_ones(m) == 6.0);
  CHECK(quad_ones_sq(m) == 18.0);

  SymMatrix z(3);
  CHECK(quad_ones(z) == 0.0);
  CHECK(quad_ones_sq(z) == 0.0);

  SymMatrix id(5);
  for (int i = 0; i < 5; ++i) id.at(i, i) = 1.0;
  CHECK(quad_ones(id) == 5.0);

  SymMatrix id4(4);
  for (int i = 0; i < 4; ++i) id4.at(i, i) = 1.0;
  CHECK(quad_ones_sq(id4) == 4.0);

  SymMatrix offdiag(2);
  offdiag.at(0, 1) = offdiag.at(1, 0) = 1.0;
  CHECK(quad_ones_sq(offdiag) == 2.0);
}

TEST_CASE("quad_ones_sq equals explicit O(n^3) product on small matrices") {
  Philox gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(gen.next_u64() % 15);
    SymMatrix m = random_symmetric(n, gen);
    // direct 1' (M (M 1))
    std::vector<double> ones(n, 1.0), m1(n), m21(n);
    matvec_serial(m, ones.data(), m1.data());
    matvec_serial(m, m1.data(), m21.data());
    double direct = 0.0;
    for (double v : m21) direct += v;
    CHECK(quad_ones_sq(m) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("matvec parallel matches serial bitwise") {
  Philox gen(17);
  for (int n : {1, 7, 64, 300}) {
    SymMatrix m = random_symmetric(n, gen);
    std::vector<double> x(n), y1(n), y2(n);
    for (double& v : x) v = gen.next_normal();
    matvec_serial(m, x.data(), y1.data());
    matvec(m, x.data(), y2.data());
    CHECK(y1 == y2);
  }
}

TEST_CASE("largest_eigenvalue: diagonal matrix") {
  SymMatrix m(3);
  m.at(0, 0) = 1;
  m.at(1, 1) = 2;
  m.at(2, 2) = 3;
  EigResult r = largest_eigenvalue(m);
  CHECK(r.lambda == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(r.vector[2]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.vector[2] > 0.0);  // sign convention
}

TEST_CASE("largest_eigenvalue: rank-one ones matrix") {
  const int n = 10;
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = 1.0;
  EigResult r = largest_eigenvalue(m);
  CHECK(r.lambda == doctest::Approx(10.0).epsilon(1e-12));
  for (double v : r.vector) CHECK(v == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-9));
}

TEST_CASE("largest_eigenvalue: n = 1") {
  SymMatrix m(1);
  m.at(0, 0) = -4.5;
  EigResult r = largest_eigenvalue(m);
  CHECK(r.lambda == -4.5);
  CHECK(operator_norm(m) == 4.5);
}

TEST_CASE("largest_eigenvalue agrees with the dense oracle on random 64x64") {
  Philox gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    SymMatrix m = random_symmetric(64, gen);
    EigResult lanczos = largest_eigenvalue(m, 1e-10, 0, gen.next_u64());
    EigResult dense = dense_largest_eigenvalue(m);
    double scale = dense_operator_norm(m);
    CHECK(std::abs(lanczos.lambda - dense.lambda) <= 1e-8 * scale);
    CHECK(lanczos.residual <= 1e-8 * scale);
  }
}

TEST_CASE("operator_norm") {
  SymMatrix m(2);
  m.at(0, 0) = -5;
  m.at(1, 1) = 2;
  CHECK(operator_norm(m) == doctest::Approx(5.0).epsilon(1e-12));

  const int n = 12;
  const double theta = 0.7;
  SymMatrix ones(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ones.at(i, j) = 2.0 * theta;
  CHECK(operator_norm(ones) == doctest::Approx(2.0 * n * theta).epsilon(1e-10));

  Philox gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    SymMatrix r = random_symmetric(64, gen);
    double dense = dense_operator_norm(r);
    CHECK(std::abs(operator_norm(r, 1e-10, trial) - dense) <= 1e-8 * dense);
  }
}

TEST_CASE("quadratic-form variance bound for unit vectors") {
  Kernel k = kernel_from_ma(MAFilter{{{Lag{0, 0}, 1.0}, {Lag{1, 0}, 1.0}}});
  Philox gen(47);
  const int n = 12;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(n);
    double s = 0.0;
    for (double& v : x) {
      v = gen.next_normal();
      s += v * v;
    }
    for (double& v : x) v /= std::sqrt(s);
    CHECK(exact_var_quadform(k, x) <= 4.0 * k.abs_sum + 1e-12);
  }
}
