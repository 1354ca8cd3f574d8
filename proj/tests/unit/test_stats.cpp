#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "levysearch/rng.hpp"
#include "levysearch/stats.hpp"

using namespace levysearch;

TEST_SUITE("stats") {

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(pairwise_sum(v) == 500500.0);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  // 1 followed by many tiny terms: pairwise keeps them.
  std::vector<double> w(1 << 20, 1e-16);
  w[0] = 1.0;
  CHECK(std::abs(pairwise_sum(w) - (1.0 + ((1 << 20) - 1) * 1e-16)) < 1e-15);
}

TEST_CASE("summarize") {
  const std::vector<double> v = {1, 2, 3, 4};
  const Estimate e = summarize(v);
  CHECK(e.mean == 2.5);
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(e.p50 == doctest::Approx(2.5));
  CHECK(e.p90 == doctest::Approx(3.7));
  CHECK(e.n_samples == 4);
  CHECK_FALSE(e.lower_bound_only());
  CHECK(summarize(v, 1).lower_bound_only());
  const Estimate one = summarize(std::vector<double>{7.0});
  CHECK(one.mean == 7.0);
  CHECK(one.std_error == 0.0);
}

TEST_CASE("quantiles") {
  const std::vector<double> s = {0, 10};
  CHECK(sorted_quantile(s, 0.0) == 0.0);
  CHECK(sorted_quantile(s, 0.25) == 2.5);
  CHECK(sorted_quantile(s, 1.0) == 10.0);
}

TEST_CASE("least squares") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 - 2.0 * xi);
  const LinearFit f = least_squares(x, y);
  CHECK(f.slope == doctest::Approx(-2.0));
  CHECK(f.intercept == doctest::Approx(3.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  std::vector<double> p;
  for (double xi : x) p.push_back(4.0 * std::pow(xi, 0.25));
  CHECK(log_log_fit(x, p).slope == doctest::Approx(0.25));
}

TEST_CASE("stderr is honest on split halves") {
  Rng rng(31);
  std::vector<double> data(4000);
  for (double& d : data) d = -std::log(rng.uniform());
  int consistent = 0;
  for (int split = 0; split < 100; ++split) {
    std::vector<double> a;
    std::vector<double> b;
    for (double d : data) (rng.uniform() < 0.5 ? a : b).push_back(d);
    const Estimate ea = summarize(a);
    const Estimate eb = summarize(b);
    consistent += std::abs(ea.mean - eb.mean) < 3.0 * std::hypot(ea.std_error, eb.std_error);
  }
  CHECK(consistent >= 99);
}

}  // TEST_SUITE
