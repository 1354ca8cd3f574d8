#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "levysearch/rng.hpp"
#include "levysearch/stats.hpp"
#include "levysearch/steplaw.hpp"

using namespace levysearch;

namespace {

// Composite Simpson of f(l) * l^-mu over [1, ell_max] in log coordinates,
// l = e^t, so dl = e^t dt.
template <class F>
double tail_integral(double mu, double ell_max, F&& f) {
  const int n = 200000;
  const double top = std::log(ell_max);
  const double h = top / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double l = std::exp(t);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f(l) * std::pow(l, 1.0 - mu);
  }
  return s * h / 3.0;
}

struct Quadrature {
  double a;
  double mean;
  double second;
};

Quadrature quadrature(double mu, double ell_max) {
  const double mass = tail_integral(mu, ell_max, [](double) { return 1.0; });
  const double a = 1.0 / (1.0 + mass);
  const double m1 = a * (0.5 + tail_integral(mu, ell_max, [](double l) { return l; }));
  const double m2 = a * (1.0 / 3.0 + tail_integral(mu, ell_max, [](double l) { return l * l; }));
  return {a, m1, m2};
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST_SUITE("steplaw") {

TEST_CASE("normalization examples") {
  CHECK(normalization(WalkSpec::levy(2, 50)) == doctest::Approx(50.0 / 99.0).epsilon(1e-14));
  CHECK(normalization(WalkSpec::levy(2, std::numeric_limits<double>::infinity())) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normalization(WalkSpec::levy(3, 2)) == doctest::Approx(8.0 / 11.0).epsilon(1e-14));
  // Quadrature oracle, including the truncated stand-in for ell_max = inf.
  CHECK(rel(quadrature(2, 50).a, 50.0 / 99.0) < 1e-9);
  CHECK(rel(quadrature(2, 1e8).a, 0.5) < 1e-7);
  CHECK(rel(quadrature(3, 2).a, 8.0 / 11.0) < 1e-9);
}

TEST_CASE("cdf examples") {
  const WalkSpec s = WalkSpec::levy(2, 50);
  CHECK(cdf(s, 1.0) == doctest::Approx(50.0 / 99.0).epsilon(1e-14));
  CHECK(cdf(s, 50.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cdf(s, 2.0) == doctest::Approx(75.0 / 99.0).epsilon(1e-14));
  CHECK(cdf(s, 0.0) == 0.0);
  CHECK(cdf(s, 1e9) == 1.0);
  CHECK_THROWS_AS((void)cdf(s, -0.1), std::domain_error);
  for (double mu : {1.2, 1.5, 2.5, 3.0}) CHECK(cdf(WalkSpec::levy(mu, 50), 50) == doctest::Approx(1.0));
}

TEST_CASE("quantile examples and round trip") {
  const WalkSpec s = WalkSpec::levy(2, 50);
  CHECK(quantile(s, 50.0 / 99.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quantile(s, 1.0) == doctest::Approx(50.0).epsilon(1e-12));
  const double l = quantile(s, 0.75);
  CHECK(l == doctest::Approx(1.0 / (2.0 - 0.75 * 99.0 / 50.0)).epsilon(1e-12));
  CHECK(std::abs(cdf(s, l) - 0.75) < 1e-10);
  for (double mu : {1.2, 1.5, 2.0, 2.5, 3.0}) {
    const WalkSpec law = WalkSpec::levy(mu, 1e4);
    for (double u = 0.001; u < 1.0; u += 0.0137) CHECK(std::abs(cdf(law, quantile(law, u)) - u) < 1e-10);
  }
}

TEST_CASE("analytics examples") {
  const StepLawAnalytics c = analytics(WalkSpec::levy(2, 50));
  CHECK(c.tau == doctest::Approx(50.0 / 99.0 * (0.5 + std::log(50.0))).epsilon(1e-13));
  CHECK(c.tau == doctest::Approx(2.2282).epsilon(1e-4));
  const StepLawAnalytics f = analytics(WalkSpec::fixed(7));
  CHECK(f.tau == 7.0);
  CHECK(f.variance == 0.0);
  CHECK(analytics(WalkSpec::two_scales(100, 0.1)).tau == doctest::Approx(10.9).epsilon(1e-14));
}

TEST_CASE("analytics match quadrature for random laws") {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const double mu = 1.05 + 1.95 * rng.uniform();
    const double ell_max = std::exp(std::log(2.0) + (std::log(1e5) - std::log(2.0)) * rng.uniform());
    const StepLawAnalytics c = analytics(WalkSpec::levy(mu, ell_max));
    const Quadrature q = quadrature(mu, ell_max);
    CAPTURE(mu);
    CAPTURE(ell_max);
    CHECK(rel(c.a, q.a) < 1e-6);
    CHECK(rel(c.tau, q.mean) < 1e-6);
    CHECK(rel(c.second_moment, q.second) < 1e-6);
  }
  // Exponents snapped onto the logarithmic cases.
  for (double mu : {2.0, 3.0, 2.0 + 1e-12, 3.0 - 1e-12}) {
    const StepLawAnalytics c = analytics(WalkSpec::levy(mu, 1e3));
    const Quadrature q = quadrature(mu, 1e3);
    CHECK(rel(c.tau, q.mean) < 1e-6);
    CHECK(rel(c.second_moment, q.second) < 1e-6);
  }
}

TEST_CASE("infinite cutoff") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(std::isinf(analytics(WalkSpec::levy(2, inf)).tau));
  CHECK(analytics(WalkSpec::levy(2.5, inf)).tau == doctest::Approx(0.6 * (0.5 + 2.0)));
  const StepSampler sampler(WalkSpec::levy(1.5, inf));
  CHECK(std::isfinite(sampler.from_uniform(1.0 - 1e-16)));
}

TEST_CASE("mean step grows like ell_max^(2-mu)") {
  std::vector<double> r;
  for (double ell_max : {1e2, 1e3, 1e4}) r.push_back(analytics(WalkSpec::levy(1.5, ell_max)).tau / std::sqrt(ell_max));
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  CHECK(*hi / *lo < 2.0);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((void)WalkSpec::levy(1.0, 50), InvalidSpec);
  CHECK_THROWS_AS((void)WalkSpec::levy(3.5, 50), InvalidSpec);
  CHECK_THROWS_AS((void)WalkSpec::levy(2, 0.5), InvalidSpec);
  CHECK_THROWS_AS((void)WalkSpec::two_scales(100, 0), InvalidSpec);
  CHECK_THROWS_AS((void)WalkSpec::fixed(0), InvalidSpec);
  CHECK_THROWS_AS((void)WalkSpec::torus_levy(2, 4), InvalidSpec);
  CHECK(WalkSpec::torus_levy(2, 1e4).max_length() == 50.0);
  CHECK_THROWS_AS((void)WalkSpec::fixed(3).levy_law(), UnsupportedKind);
  CHECK_FALSE(WalkSpec::two_scales(10, 0.5).has_monotone_density());
}

TEST_CASE("sampler agrees with cdf in sup norm") {
  for (double mu : {1.2, 1.5, 2.0, 2.5, 3.0}) {
    const WalkSpec law = WalkSpec::levy(mu, 50);
    const StepSampler sampler(law);
    Rng rng(mix64(static_cast<std::uint64_t>(mu * 1000)));
    std::vector<double> xs(200000);
    for (double& x : xs) x = sampler(rng);
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = cdf(law, xs[i]);
      ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
    }
    CAPTURE(mu);
    CHECK(ks < 0.005);
    CHECK(xs.front() > 0.0);
    CHECK(xs.back() <= 50.0);
  }
}

TEST_CASE("sampler equals quantile for the same uniform") {
  const WalkSpec law = WalkSpec::levy(1.7, 300);
  const StepSampler sampler(law);
  for (double u = 1e-6; u <= 1.0; u += 0.0031) CHECK(sampler.from_uniform(u) == doctest::Approx(quantile(law, u)).epsilon(1e-13));
}

TEST_CASE("two scales and fixed sampling") {
  const StepSampler two(WalkSpec::two_scales(100, 0.1));
  Rng rng(2);
  int long_steps = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double l = two(rng);
    CHECK((l == 1.0 || l == 100.0));
    long_steps += l == 100.0;
  }
  CHECK(std::abs(long_steps / double(n) - 0.1) < 3 * std::sqrt(0.09 / n) + 1e-3);
  const StepSampler fixed(WalkSpec::fixed(7));
  CHECK(fixed(rng) == 7.0);
}

}  // TEST_SUITE
