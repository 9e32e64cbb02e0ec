#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "corrmat/rng.hpp"

using namespace corrmat;

TEST_CASE("Philox4x32-10 known-answer vector") {
  // counter 0, key 0: 6627e8d5 e169c58d bc57ac4c 9b00dbd8
  Philox gen(0);
  CHECK(gen.next_u64() == 0xe169c58d6627e8d5ULL);
  CHECK(gen.next_u64() == 0x9b00dbd8bc57ac4cULL);
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a{123, 400, 7};
  RngStream b{123, 400, 7};
  RngStream c{123, 400, 8};
  Philox ga = a.generator(), gb = b.generator(), gc = c.generator();
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = ga.next_u64();
    all_equal &= (x == gb.next_u64());
    any_diff |= (x != gc.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(a.generator(1).next_u64() != a.generator(2).next_u64());
}

TEST_CASE("uniform doubles are in [0,1) with the right mean") {
  Philox gen(99);
  double sum = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    double u = gen.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / m == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("normal variates have standard moments") {
  Philox gen(7);
  const int m = 1000000;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int i = 0; i < m; ++i) {
    double x = gen.next_normal();
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  CHECK(s1 / m == doctest::Approx(0.0).epsilon(0.01));
  CHECK(std::abs(s1 / m) < 0.005);          // SE ~ 0.001
  CHECK(s2 / m == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(s3 / m) < 0.02);           // skewness
  CHECK(s4 / m == doctest::Approx(3.0).epsilon(0.02));  // kurtosis
}
