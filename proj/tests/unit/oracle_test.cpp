#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "lcoal/oracle.hpp"

namespace lcoal {
namespace {

TEST(Oracle, UniformThree) {
  const auto table = RateTable::build(CharacteristicMeasure::uniform(), 10);
  const auto d = exact_x_distribution(table, 3);
  ASSERT_EQ(d.support, (std::vector<std::int64_t>{1, 2}));
  EXPECT_NEAR(d.pmf[0], 0.5, 1e-15);
  EXPECT_NEAR(d.pmf[1], 0.5, 1e-15);
}

TEST(Oracle, PairAlwaysOneCollision) {
  for (const auto& m : {CharacteristicMeasure::beta(0.5, 3), CharacteristicMeasure::log_pareto(1.5)}) {
    const auto d = exact_x_distribution(RateTable::build(m, 5), 2);
    ASSERT_EQ(d.pmf.size(), 1u);
    EXPECT_EQ(d.pmf[0], 1.0);
  }
}

TEST(Oracle, UniformMeanIsHarmonic) {
  const auto table = RateTable::build(CharacteristicMeasure::uniform(), 200);
  EXPECT_NEAR(exact_x_distribution(table, 4).mean, 11.0 / 6.0, 1e-14);
  double h = 0.0;
  for (int k = 1; k < 200; ++k) h += 1.0 / k;
  EXPECT_NEAR(exact_x_distribution(table, 200).mean, h, 1e-11);
}

TEST(Oracle, ExpectedTimes) {
  const auto table = RateTable::build(CharacteristicMeasure::uniform(), 10);
  const auto t = exact_expected_times(table, 3);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[1], 0.0);
  EXPECT_NEAR(t[2], 3.0, 1e-14);
  EXPECT_NEAR(t[3], 3.5, 1e-14);
}

TEST(Oracle, PmfConsistency) {
  for (const auto& m : {CharacteristicMeasure::uniform(), CharacteristicMeasure::beta(5, 0.3),
                        CharacteristicMeasure::log_log_pareto()}) {
    const auto table = RateTable::build(m, 60);
    for (std::int64_t n : {2, 7, 60}) {
      const auto d = exact_x_distribution(table, n);
      double total = 0, mean = 0, second = 0;
      for (std::size_t i = 0; i < d.pmf.size(); ++i) {
        ASSERT_GE(d.pmf[i], 0.0);
        const double j = static_cast<double>(d.support[i]);
        total += d.pmf[i], mean += j * d.pmf[i], second += j * j * d.pmf[i];
      }
      EXPECT_NEAR(total, 1.0, 1e-12) << m.spec() << " n=" << n;
      EXPECT_NEAR(d.mean, mean, 1e-10);
      EXPECT_NEAR(d.variance, second - mean * mean, 1e-10);
      EXPECT_EQ(d.support.front(), 1);
      EXPECT_EQ(d.support.back(), n - 1);
    }
  }
}

TEST(Oracle, IndicatorExamples) {
  const auto d = indicator_distribution(1.0, 3);
  EXPECT_NEAR(d.pmf[0], 0.5, 1e-15);
  EXPECT_NEAR(d.pmf[1], 0.5, 1e-15);
  const auto q = indicator_probabilities(2.0, 5);
  EXPECT_NEAR(q[4], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(q[0], 1.0);
  double h = 0.0;
  for (int k = 1; k < 80; ++k) h += 1.0 / k;
  EXPECT_NEAR(indicator_distribution(1.0, 80).mean, h, 1e-12);
}

TEST(Oracle, DynamicProgramMatchesIndicators) {
  for (double b : {0.5, 1.0, 2.0, 5.0}) {
    const auto table = RateTable::build(CharacteristicMeasure::beta(1, b), 50);
    for (std::int64_t n = 2; n <= 50; ++n) {
      const auto dp = exact_x_distribution(table, n);
      const auto ind = indicator_distribution(b, n);
      ASSERT_EQ(dp.pmf.size(), ind.pmf.size());
      for (std::size_t i = 0; i < dp.pmf.size(); ++i)
        ASSERT_NEAR(dp.pmf[i], ind.pmf[i], 1e-10) << "b=" << b << " n=" << n;
    }
  }
}

TEST(Oracle, IndicatorProbabilityDecaysLikeBOverK) {
  for (double b : {0.5, 2.0}) {
    const auto q = indicator_probabilities(b, 2000);
    for (std::int64_t k = 200; k <= 2000; ++k)
      ASSERT_LE(std::abs(q[static_cast<std::size_t>(k - 1)] * k / b - 1.0), 0.05) << b << " " << k;
  }
}

TEST(Oracle, CostGuard) {
  const auto table = RateTable::build(CharacteristicMeasure::uniform(), 600);
  EXPECT_THROW(exact_x_distribution(table, 501), std::exception);
  EXPECT_NO_THROW(exact_x_distribution(table, 500));
}

}  // namespace
}  // namespace lcoal
