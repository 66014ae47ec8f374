#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "lcoal/random.hpp"
#include "lcoal/statistics.hpp"

namespace lcoal {
namespace {

const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };

TEST(Ks, SinglePoint) {
  const std::vector<double> one{0.5};
  EXPECT_DOUBLE_EQ(ks_distance(one, uniform_cdf), 0.5);
}

TEST(Ks, ExactQuantiles) {
  const int n = 1000;
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) xs.push_back((i - 0.5) / n);
  EXPECT_LE(ks_distance(xs, uniform_cdf), 0.5 / n + 1e-15);
}

TEST(Ks, NormalSampleAcrossSeeds) {
  boost::math::normal_distribution<double> normal;
  const auto cdf = [&](double x) { return boost::math::cdf(normal, x); };
  int within = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = standard_normal(rng);
    within += ks_distance(xs, cdf) <= 0.01;
  }
  EXPECT_GE(within, 19);
}

TEST(Ks, InvariantUnderIncreasingMaps) {
  RandomStream rng(3);
  std::vector<double> xs(5000), ys(5000);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = exponential(rng);
    ys[i] = 3.0 * xs[i] - 7.0;
  }
  const auto exp_cdf = [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); };
  const double d = ks_distance(xs, exp_cdf);
  EXPECT_NEAR(ks_distance(ys, [&](double y) { return exp_cdf((y + 7.0) / 3.0); }), d, 1e-14);
}

TEST(Ks, DiscreteLawWithTies) {
  // Fair coin on {0, 1}, sampled exactly half and half: distance 0.
  std::vector<double> xs(1000, 0.0);
  std::fill(xs.begin() + 500, xs.end(), 1.0);
  const auto right = [](double x) { return x < 0 ? 0.0 : (x < 1 ? 0.5 : 1.0); };
  const auto left = [](double x) { return x <= 0 ? 0.0 : (x <= 1 ? 0.5 : 1.0); };
  EXPECT_NEAR(ks_distance(xs, right, left), 0.0, 1e-15);
  std::fill(xs.begin(), xs.end(), 0.0);
  EXPECT_NEAR(ks_distance(xs, right, left), 0.5, 1e-15);
}

TEST(Ks, TwoSample) {
  RandomStream rng(4);
  std::vector<double> a(20000), b(20000), c(20000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = standard_normal(rng);
    b[i] = standard_normal(rng);
    c[i] = standard_normal(rng) + 0.1;
  }
  EXPECT_GT(ks_two_sample(a, b).p_value, 0.001);
  EXPECT_LT(ks_two_sample(a, c).p_value, 1e-6);
  EXPECT_DOUBLE_EQ(ks_two_sample(a, a).distance, 0.0);
  EXPECT_NEAR(kolmogorov_survival(1.358), 0.05, 1e-3);
}

TEST(CfDistance, Examples) {
  const std::vector<double> zero{0.0};
  const std::vector<double> t0{0.0};
  const auto cf = [](double t) { return std::exp(std::complex<double>(-t * t / 2, 0)); };
  EXPECT_NEAR(cf_distance(zero, cf, t0), 0.0, 1e-12);
  EXPECT_GT(cf_distance(zero, cf, default_cf_grid()), 0.1);
  const auto grid = default_cf_grid();
  ASSERT_EQ(grid.size(), 20u);
  EXPECT_NEAR(grid.front(), 0.1, 1e-15);
  EXPECT_NEAR(grid.back(), 2.0, 1e-15);
}

TEST(MomentErrors, Examples) {
  RandomStream rng(5);
  std::vector<double> xs(1000000);
  for (auto& x : xs) x = exponential(rng);
  for (double e : moment_errors(xs, {0.0}, 4)) EXPECT_LE(e, 0.02);
  EXPECT_TRUE(moment_errors(xs, {0.0}, 0).empty());
  const std::vector<double> constant(10, ml_moment({0.5}, 1));
  EXPECT_NEAR(moment_errors(constant, {0.5}, 1)[0], 0.0, 1e-15);
}

TEST(Summaries, PmfTotalVariationMeans) {
  const std::vector<double> xs{0, 1, 1, 2, 5};
  const auto p = empirical_pmf(xs, 2);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_DOUBLE_EQ(p[1], 0.4);
  EXPECT_DOUBLE_EQ(total_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0}), 0.5);
  const auto s = mean_and_se(xs);
  EXPECT_DOUBLE_EQ(s.mean, 1.8);
  EXPECT_NEAR(s.variance, 3.7, 1e-14);
  EXPECT_NEAR(s.standard_error, std::sqrt(3.7 / 5), 1e-14);
}

}  // namespace
}  // namespace lcoal
