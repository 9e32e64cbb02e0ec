#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrmat/rng.hpp"
#include "corrmat/stats.hpp"

using namespace corrmat;

TEST_CASE("normal_cdf spot values against a high-precision oracle") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(1.959963985) - 0.975000000026881562) < 1e-9);
  CHECK(std::abs(normal_cdf(-8.0) - 6.22096057427178412e-16) < 1e-17);
  CHECK(std::abs(normal_cdf(-1.0) - 0.15865525393145705) < 1e-12);
}

TEST_CASE("normal_cdf symmetry") {
  for (double x = -10.0; x <= 10.0; x += 0.173) {
    CHECK(std::abs(normal_cdf(x) + normal_cdf(-x) - 1.0) < 2e-12);
  }
}

TEST_CASE("normal_quantile inverts normal_cdf") {
  CHECK(std::abs(normal_quantile(0.975) - 1.95996398454005424) < 1e-8);
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-10));
  Philox gen(3);
  for (int i = 0; i < 200; ++i) {
    double p = gen.next_double();
    if (p < 1e-12 || p > 1.0 - 1e-12) continue;
    double x = normal_quantile(p);
    CHECK(std::abs(normal_cdf(x) - p) < 1e-10);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("moments") {
  MomentSummary s = moments({1.0, 2.0, 3.0, 4.0});
  CHECK(s.count == 4);
  CHECK(s.mean == 2.5);
  CHECK(s.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(s.mean_se == doctest::Approx(std::sqrt(s.variance / 4.0)).epsilon(1e-12));
  CHECK_THROWS_AS(moments({1.0}), std::invalid_argument);
}

TEST_CASE("ks_test: theoretical quantile grid gives tiny D") {
  const int m = 1000;
  std::vector<double> samples(m);
  for (int i = 0; i < m; ++i) samples[i] = normal_quantile((i + 0.5) / m);
  KsResult r = ks_test(samples, 0.0, 1.0);
  CHECK(r.statistic <= 0.5 / m + 1e-9);
  CHECK(r.p_value > 0.999);
}

TEST_CASE("ks_test: unit shift is decisively rejected") {
  const int m = 1000;
  std::vector<double> samples(m);
  for (int i = 0; i < m; ++i) samples[i] = normal_quantile((i + 0.5) / m) + 1.0;
  KsResult r = ks_test(samples, 0.0, 1.0);
  // D -> sup |Phi(x) - Phi(x-1)| = Phi(0.5) - Phi(-0.5) ~ 0.3829
  CHECK(r.statistic == doctest::Approx(0.3829).epsilon(0.02));
  CHECK(r.p_value < 1e-12);
}

TEST_CASE("ks_test preconditions") {
  std::vector<double> samples(200, 0.0);
  CHECK_THROWS_AS(ks_test(samples, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ks_test(std::vector<double>(50, 0.0), 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("ks_test calibration: rejection rate near the nominal level") {
  Philox gen(2024);
  int rejections = 0;
  for (int batch = 0; batch < 200; ++batch) {
    std::vector<double> samples(500);
    for (double& x : samples) x = gen.next_normal();
    if (ks_test(samples, 0.0, 1.0).p_value < 0.05) ++rejections;
  }
  // binomial(200, 0.05) central range
  CHECK(rejections >= 2);
  CHECK(rejections <= 25);
}

TEST_CASE("ks p-value is monotone decreasing in D at fixed M") {
  const int m = 500;
  double prev_p = 1.1;
  for (double shift : {0.0, 0.05, 0.15, 0.4, 1.0}) {
    std::vector<double> samples(m);
    for (int i = 0; i < m; ++i) samples[i] = normal_quantile((i + 0.5) / m) + shift;
    KsResult r = ks_test(samples, 0.0, 1.0);
    CHECK(r.p_value <= prev_p + 1e-15);
    prev_p = r.p_value;
  }
}

TEST_CASE("qq_points") {
  CHECK_THROWS_AS(qq_points({1.0}, 0.0, 1.0), std::invalid_argument);

  const int m = 200;
  std::vector<double> samples(m);
  for (int i = 0; i < m; ++i) samples[i] = 2.0 + 3.0 * normal_quantile((i + 0.5) / m);
  auto pairs = qq_points(samples, 2.0, 9.0);
  REQUIRE(pairs.size() == samples.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(std::abs(pairs[i].first - pairs[i].second) < 1e-9);
    if (i) {
      CHECK(pairs[i].first >= pairs[i - 1].first);
      CHECK(pairs[i].second >= pairs[i - 1].second);
    }
  }
}
