#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrmat/kernel.hpp"
#include "corrmat/report_io.hpp"
#include "corrmat/rng.hpp"

using namespace corrmat;

namespace {

// brute-force double sum over the filter support
double conv_oracle(const MAFilter& f, int u, int v) {
  double s = 0.0;
  for (const auto& [p, ap] : f.coeffs) {
    auto it = f.coeffs.find(Lag{p.u + u, p.v + v});
    if (it != f.coeffs.end()) s += ap * it->second;
  }
  return s;
}

MAFilter random_filter(Philox& gen) {
  MAFilter f;
  int count = 1 + static_cast<int>(gen.next_u64() % 5);
  for (int i = 0; i < count; ++i) {
    int s = static_cast<int>(gen.next_u64() % 7) - 3;
    int t = static_cast<int>(gen.next_u64() % 7) - 3;
    f.coeffs[Lag{s, t}] = 2.0 * gen.next_double() - 1.0;
  }
  if (f.coeffs.size() == 1 && f.coeffs.begin()->second == 0.0) f.coeffs.begin()->second = 1.0;
  return f;
}

}  // namespace

TEST_CASE("kernel_from_ma: delta filter") {
  MAFilter f{{{Lag{0, 0}, 1.0}}};
  Kernel k = kernel_from_ma(f);
  CHECK(k.values.size() == 1);
  CHECK(k.at(0, 0) == 1.0);
  CHECK(k.abs_sum == 1.0);
  CHECK(k.total_sum == 1.0);
}

TEST_CASE("kernel_from_ma: two-tap filter") {
  MAFilter f{{{Lag{0, 0}, 1.0}, {Lag{1, 0}, 1.0}}};
  Kernel k = kernel_from_ma(f);
  CHECK(k.at(0, 0) == 2.0);
  CHECK(k.at(1, 0) == 1.0);
  CHECK(k.at(-1, 0) == 1.0);
  CHECK(k.abs_sum == 4.0);
  CHECK(k.total_sum == 4.0);
}

TEST_CASE("kernel_from_ma: degenerate differencing filter") {
  MAFilter f{{{Lag{0, 0}, 1.0}, {Lag{1, 0}, -1.0}}};
  Kernel k = kernel_from_ma(f);
  CHECK(k.at(0, 0) == 2.0);
  CHECK(k.at(1, 0) == -1.0);
  CHECK(k.at(-1, 0) == -1.0);
  CHECK(k.total_sum == 0.0);
}

TEST_CASE("kernel_from_ma: errors") {
  CHECK_THROWS_AS(kernel_from_ma(MAFilter{}), std::invalid_argument);
  MAFilter zero{{{Lag{0, 0}, 0.0}}};
  CHECK_THROWS_AS(kernel_from_ma(zero), std::invalid_argument);
}

TEST_CASE("kernel_from_ma: matches brute-force convolution and sum identity") {
  Philox gen(42);
  for (int trial = 0; trial < 50; ++trial) {
    MAFilter f = random_filter(gen);
    Kernel k = kernel_from_ma(f);
    for (int u = -7; u <= 7; ++u)
      for (int v = -7; v <= 7; ++v)
        CHECK(k.at(u, v) == doctest::Approx(conv_oracle(f, u, v)).epsilon(1e-12));
    double cs = f.coeff_sum();
    CHECK(k.total_sum == doctest::Approx(cs * cs).epsilon(1e-10));
    // symmetry is exact
    for (const auto& [lag, val] : k.values) CHECK(k.at(-lag.u, -lag.v) == val);
  }
}

TEST_CASE("kernel_explicit: basic tables") {
  Kernel w = kernel_explicit({{Lag{0, 0}, 0.5}});
  CHECK(w.abs_sum == 0.5);
  CHECK(w.total_sum == 0.5);

  CHECK_THROWS_WITH_AS(kernel_explicit({{Lag{0, 0}, 1.0}, {Lag{1, 1}, 0.5}}),
                       doctest::Contains("(1,1)"), std::invalid_argument);

  Kernel k = kernel_explicit({{Lag{0, 0}, 1.0}, {Lag{1, 1}, 0.5}, {Lag{-1, -1}, 0.5}});
  CHECK(k.abs_sum == 2.0);
  CHECK(k.total_sum == 2.0);

  CHECK_THROWS_AS(kernel_explicit({{Lag{0, 0}, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("validate_kernel: Wigner delta has a flat spectrum") {
  Kernel w = kernel_explicit({{Lag{0, 0}, 0.5}});
  ValidityReport r = validate_kernel(w, 16);
  CHECK(r.valid);
  CHECK(r.min_spectral == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("validate_kernel: MA kernels always pass") {
  Philox gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    Kernel k = kernel_from_ma(random_filter(gen));
    for (int m : {16, 32, 64}) {
      ValidityReport r = validate_kernel(k, m);
      CHECK(r.valid);
    }
  }
}

TEST_CASE("validate_kernel: indefinite explicit kernel fails") {
  Kernel k = kernel_explicit({{Lag{0, 0}, 1.0}, {Lag{1, 0}, 0.8}, {Lag{-1, 0}, 0.8}});
  ValidityReport r = validate_kernel(k, 16);
  CHECK(!r.valid);
  // spectrum is 1 + 1.6 cos(w), minimized at w = pi
  CHECK(r.min_spectral == doctest::Approx(-0.6).epsilon(1e-12));
}

TEST_CASE("validate_kernel: embed size preconditions") {
  Kernel w = kernel_explicit({{Lag{0, 0}, 0.5}});
  CHECK_THROWS_AS(validate_kernel(w, 15), std::invalid_argument);
  MAFilter wide;
  for (int s = -4; s <= 4; ++s) wide.coeffs[Lag{s, 0}] = 1.0;
  Kernel k = kernel_from_ma(wide);  // radius 8
  CHECK_THROWS_AS(validate_kernel(k, 16), std::invalid_argument);
  CHECK_NOTHROW(validate_kernel(k, 32));
}

TEST_CASE("truncate_kernel") {
  Kernel k = kernel_explicit(
      {{Lag{0, 0}, 1.0}, {Lag{5, 5}, 1e-12}, {Lag{-5, -5}, 1e-12}});

  SUBCASE("eps = 0 is the identity") {
    Kernel t = truncate_kernel(k, 0.0);
    CHECK(t.values == k.values);
  }
  SUBCASE("below-threshold pairs are dropped jointly") {
    Kernel t = truncate_kernel(k, 1e-10);
    CHECK(t.values.size() == 1);
    CHECK(t.at(0, 0) == 1.0);
  }
  SUBCASE("the origin is never dropped") {
    Kernel w = kernel_explicit({{Lag{0, 0}, 0.5}});
    Kernel t = truncate_kernel(w, 1.0);
    CHECK(t.values == w.values);
  }
  SUBCASE("symmetry survives, abs_sum monotone in eps") {
    Philox gen(11);
    for (int trial = 0; trial < 20; ++trial) {
      Kernel full = kernel_from_ma(random_filter(gen));
      double prev = full.abs_sum;
      for (double eps : {0.0, 1e-6, 1e-2, 0.5, 2.0}) {
        Kernel t = truncate_kernel(full, eps);
        for (const auto& [lag, val] : t.values) CHECK(t.at(-lag.u, -lag.v) == val);
        CHECK(t.abs_sum <= prev + 1e-15);
        CHECK(full.abs_sum - t.abs_sum <= eps + 1e-15);
        CHECK(t.values.count(Lag{0, 0}) == full.values.count(Lag{0, 0}));
      }
    }
  }
}

TEST_CASE("kernel JSON round-trips exactly") {
  json j = {{"type", "ma"}, {"coeffs", {{0, 0, 1.0}, {1, 0, -0.3}, {-2, 1, 0.125}}}};
  KernelInput in = kernel_from_json(j);
  json echoed = kernel_to_json(in.kernel, in.ma);
  KernelInput back = kernel_from_json(echoed);
  CHECK(back.kernel.values == in.kernel.values);
  CHECK(back.ma->coeffs == in.ma->coeffs);

  json e = {{"type", "explicit"}, {"coeffs", {{0, 0, 0.5}, {1, 1, 0.25}, {-1, -1, 0.25}}}};
  KernelInput ex = kernel_from_json(e);
  KernelInput ex2 = kernel_from_json(kernel_to_json(ex.kernel, ex.ma));
  CHECK(ex2.kernel.values == ex.kernel.values);

  json w = {{"type", "wigner"}, {"eta2", 1.0}};
  KernelInput kw = kernel_from_json(w);
  CHECK(kw.kernel.at(0, 0) == 0.5);
  CHECK(kw.kernel.values.size() == 1);

  CHECK_THROWS_AS(kernel_from_json(json{{"type", "spectral"}}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(kernel_from_json(json{{"type", "wigner"}, {"eta2", 1.0}, {"extra", 1}}),
                       doctest::Contains("extra"), std::invalid_argument);
}
