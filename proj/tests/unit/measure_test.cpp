#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "lcoal/error.hpp"
#include "lcoal/measure.hpp"
#include "lcoal/statistics.hpp"

namespace lcoal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sample mean of 1 - eta within 3 standard errors of `want`.
void expect_sample_mean(const CharacteristicMeasure& m, double want, std::uint64_t seed) {
  RandomStream rng(seed);
  const int n = 1000000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample_one_minus_eta(m, rng);
  const MeanSe s = mean_and_se(xs);
  EXPECT_NEAR(s.mean, want, 3.0 * s.standard_error) << m.spec();
}

TEST(Measure, SampleMeans) {
  expect_sample_mean(CharacteristicMeasure::uniform(), 0.5, 1);
  expect_sample_mean(CharacteristicMeasure::beta(2, 1), 2.0 / 3.0, 2);
}

TEST(Measure, LogParetoDrawsRespectSupport) {
  const auto m = CharacteristicMeasure::log_pareto(0.5);
  RandomStream rng(3);
  for (int i = 0; i < 100000; ++i) ASSERT_GE(sample_one_minus_eta(m, rng), 1.0 - std::exp(-1.0));
}

constexpr double kCap = 700.0;

struct LawCase {
  CharacteristicMeasure measure;
  std::function<double(double)> cdf_depth;  // P(V <= t), V = -log(eta)
};

// Compared in depth space: heavy-tailed draws of 1 - eta round to 1 in double,
// while the sampler's tail field keeps them apart.
TEST(Measure, SamplerMatchesLaw) {
  const auto pareto_cdf = [](double alpha) {
    return [alpha](double t) { return t <= 1.0 ? 0.0 : 1.0 - std::pow(t, -alpha); };
  };
  const auto beta_cdf = [](double a, double b) {
    // eta ~ Beta(b, a)
    return [a, b](double t) { return boost::math::ibetac(b, a, std::exp(-t)); };
  };
  const std::vector<LawCase> cases{
      {CharacteristicMeasure::uniform(), beta_cdf(1, 1)},
      {CharacteristicMeasure::beta(2, 1), beta_cdf(2, 1)},
      {CharacteristicMeasure::beta(0.5, 3), beta_cdf(0.5, 3)},
      {CharacteristicMeasure::beta(5, 0.3), beta_cdf(5, 0.3)},
      {CharacteristicMeasure::log_pareto(1.5), pareto_cdf(1.5)},
      {CharacteristicMeasure::log_pareto(0.5), pareto_cdf(0.5)},
      {CharacteristicMeasure::log_log_pareto(),
       [](double t) { return t <= 1.0 ? 0.0 : 1.0 - 1.0 / (1.0 + std::log(t)); }},
  };
  std::uint32_t tag = 0;
  for (const auto& c : cases) {
    RandomStream rng(17, 0, ++tag);
    std::vector<double> depths(200000);
    for (auto& v : depths) {
      const Mark mark = c.measure.sample(rng);
      ASSERT_NEAR(mark.head + mark.tail, 1.0, 1e-15);
      // eta underflows beyond depth ~745, so depths are capped and compared with an atom there.
      v = std::min(-std::log(mark.tail), kCap);
    }
    const auto capped = [&](double t) { return t >= kCap ? 1.0 : c.cdf_depth(t); };
    EXPECT_LE(ks_distance(depths, capped, c.cdf_depth), 0.005) << c.measure.spec();
  }
}

TEST(Measure, TailEtaExamples) {
  EXPECT_DOUBLE_EQ(tail_eta(CharacteristicMeasure::uniform(), 0.3), 0.3);
  const auto lp = CharacteristicMeasure::log_pareto(0.5);
  EXPECT_NEAR(tail_eta(lp, std::exp(-4.0)), 0.5, 1e-14);
  EXPECT_EQ(tail_eta(lp, 0.9), 1.0);
  EXPECT_THROW(tail_eta(lp, 0.0), std::domain_error);
}

TEST(Measure, TailEtaMonotone) {
  for (const auto& m :
       {CharacteristicMeasure::uniform(), CharacteristicMeasure::beta(0.5, 3),
        CharacteristicMeasure::log_pareto(1.5), CharacteristicMeasure::log_log_pareto()}) {
    double prev = 0.0;
    for (double e = -300.0; e < 0.0; e += 0.25) {
      const double x = std::pow(10.0, e);
      if (x >= 1.0) break;
      const double t = tail_eta(m, x);
      ASSERT_GE(t, prev) << m.spec() << " x=" << x;
      ASSERT_GE(t, 0.0);
      ASSERT_LE(t, 1.0);
      prev = t;
    }
    EXPECT_GT(tail_eta(m, 1.0 - 1e-12), 0.99) << m.spec();
  }
}

TEST(Measure, LogMomentsExamples) {
  const auto u = log_moments(CharacteristicMeasure::uniform());
  EXPECT_NEAR(u.m1, 1.0, 1e-14);
  EXPECT_NEAR(u.m2, 1.0, 1e-14);
  const auto b = log_moments(CharacteristicMeasure::beta(2, 1));
  EXPECT_NEAR(b.m1, 1.5, 1e-14);
  EXPECT_NEAR(b.m2, 1.25, 1e-14);
  const auto p = log_moments(CharacteristicMeasure::log_pareto(1.5));
  EXPECT_NEAR(p.m1, 3.0, 1e-14);
  EXPECT_EQ(p.m2, kInf);
  EXPECT_EQ(log_moments(CharacteristicMeasure::log_pareto(0.5)).m1, kInf);
  EXPECT_EQ(log_moments(CharacteristicMeasure::log_log_pareto()).m1, kInf);
}

TEST(Measure, MeanXExamples) {
  EXPECT_DOUBLE_EQ(mean_x(CharacteristicMeasure::uniform()), 0.5);
  EXPECT_NEAR(mean_x(CharacteristicMeasure::beta(2, 1)), 2.0 / 3.0, 1e-15);
  // 1 - E exp(-V) against the Pareto density alpha t^{-alpha-1} on [1, inf).
  const double alpha = 0.5;
  boost::math::quadrature::exp_sinh<double> rule;
  const double laplace = rule.integrate(
      [&](double s) {
        const double t = 1.0 + s;
        return alpha * std::pow(t, -alpha - 1.0) * std::exp(-t);
      },
      1e-14);
  EXPECT_NEAR(mean_x(CharacteristicMeasure::log_pareto(alpha)), 1.0 - laplace, 1e-9);
}

QuantileGrid exponential_grid() {
  // V ~ Exponential(1) is the uniform measure; grid equally spaced in V.
  std::vector<double> u, v;
  for (int i = 0; i <= 25000; ++i) {
    v.push_back(0.001 * i);
    u.push_back(-std::expm1(-v.back()));
  }
  u.back() = 1.0;
  return QuantileGrid(u, v);
}

TEST(Measure, TabulatedUniformMoments) {
  const auto m = CharacteristicMeasure::tabulated(exponential_grid(), "exp");
  const auto lm = log_moments(m);
  EXPECT_NEAR(lm.m1, 1.0, 1e-6);
  EXPECT_NEAR(lm.m2, 1.0, 1e-6);
  EXPECT_NEAR(mean_x(m), 0.5, 1e-6);
}

TEST(Measure, TabulatedPiecewiseLinearExact) {
  // V uniform on [1, 3].
  const auto m = CharacteristicMeasure::tabulated(QuantileGrid({0.0, 1.0}, {1.0, 3.0}), "lin");
  const auto lm = log_moments(m);
  EXPECT_NEAR(lm.m1, 2.0, 1e-14);
  EXPECT_NEAR(lm.m2, 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(mean_x(m), 1.0 - (std::exp(-1.0) - std::exp(-3.0)) / 2.0, 1e-14);
  EXPECT_NEAR(m.cdf_depth(2.0), 0.5, 1e-14);
}

TEST(Measure, ValidateUniform) {
  const auto notes = validate(CharacteristicMeasure::uniform());
  ASSERT_EQ(notes.size(), 2u);
  EXPECT_EQ(notes[0].condition, "i");
  EXPECT_EQ(notes[0].verdict, Verdict::Satisfied);
  EXPECT_EQ(notes[1].condition, "ii");
  EXPECT_EQ(notes[1].verdict, Verdict::Satisfied);
  ASSERT_TRUE(notes[1].value.has_value());
  EXPECT_NEAR(*notes[1].value, 1.0, 1e-12);
}

TEST(Measure, ValidateBuiltInFamilies) {
  for (const auto& m :
       {CharacteristicMeasure::beta(0.5, 3), CharacteristicMeasure::log_pareto(0.5),
        CharacteristicMeasure::log_pareto(2.0), CharacteristicMeasure::log_log_pareto()}) {
    for (const auto& note : validate(m)) EXPECT_EQ(note.verdict, Verdict::Satisfied) << m.spec();
  }
  // 1 - eta >= 1 - 1/e, so |log x| <= -log(1 - 1/e).
  const auto notes = validate(CharacteristicMeasure::log_pareto(0.5));
  ASSERT_TRUE(notes[1].value.has_value());
  EXPECT_LE(*notes[1].value, -std::log1p(-std::exp(-1.0)));
}

// A lone atom lies on a geometric sequence 1 - delta gamma^n (take delta = 1 - x),
// so the non-geometric support condition fails.
TEST(Measure, SingleAtomViolatesNonGeometricSupport) {
  const double v = std::log(2.0);  // x = 0.5
  const auto m = CharacteristicMeasure::tabulated(QuantileGrid({0.0, 1.0}, {v, v}), "atom");
  const auto notes = validate(m);
  ASSERT_EQ(notes.size(), 2u);
  EXPECT_EQ(notes[0].verdict, Verdict::Violated);
  EXPECT_EQ(notes[1].verdict, Verdict::Satisfied);
  ASSERT_TRUE(notes[1].value.has_value());
  EXPECT_NEAR(*notes[1].value, std::log(2.0), 1e-14);
}

// Between two atoms the interpolated quantile rises, which puts an interval in the support.
TEST(Measure, ValidateTabulatedWithRisingSegment) {
  const auto m = CharacteristicMeasure::tabulated(
      QuantileGrid({0.0, 0.3, 0.31, 0.6, 0.61, 1.0}, {1.0, 1.0, 2.0, 2.0, 3.5, 3.5}), "atoms");
  EXPECT_EQ(validate(m)[0].verdict, Verdict::Satisfied);
}

TEST(Measure, ParseRoundTrip) {
  for (const char* spec : {"uniform", "beta:5,0.3", "beta:2,1", "logpareto:1.5", "loglogpareto"}) {
    EXPECT_EQ(CharacteristicMeasure::parse(spec).spec(), spec);
  }
  EXPECT_EQ(CharacteristicMeasure::parse("beta:1,1").family(), Family::Beta);
}

TEST(Measure, ParseRejectsBadInput) {
  for (const char* spec : {"", "gaussian", "beta:0,1", "beta:1", "beta:-1,2", "logpareto:0",
                           "logpareto:2.5", "logpareto:abc", "tabulated:/no/such/file.csv"}) {
    EXPECT_THROW(CharacteristicMeasure::parse(spec), ConfigError) << spec;
  }
}

TEST(Measure, QuantileGridCsv) {
  std::istringstream good("u,v\n0,1\n0.5,2\n1,3\n");
  const auto grid = QuantileGrid::parse_csv(good, "inline");
  EXPECT_EQ(grid.segments(), 2u);
  EXPECT_NEAR(grid.quantile(0.25), 1.5, 1e-15);
  std::istringstream bad_header("x,y\n0,1\n1,2\n");
  EXPECT_THROW(QuantileGrid::parse_csv(bad_header, "inline"), ConfigError);
  std::istringstream decreasing("u,v\n0,2\n1,1\n");
  EXPECT_THROW(QuantileGrid::parse_csv(decreasing, "inline"), ConfigError);
  std::istringstream zero_atom("u,v\n0,0\n0.5,0\n1,1\n");
  EXPECT_THROW(QuantileGrid::parse_csv(zero_atom, "inline"), ConfigError);
}

}  // namespace
}  // namespace lcoal
