#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <set>

#include "lcoal/random.hpp"

namespace lcoal {
namespace {

// Known-answer vectors of the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  const std::array<std::uint32_t, 4> want{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8};
  EXPECT_EQ(out, want);
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff});
  const std::array<std::uint32_t, 4> want{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd};
  EXPECT_EQ(out, want);
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0});
  const std::array<std::uint32_t, 4> want{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1};
  EXPECT_EQ(out, want);
}

TEST(RandomStream, SameIdentitySameSequence) {
  RandomStream a(42, 7, 3), b(42, 7, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RandomStream, DistinctIdentitiesDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t seed : {0u, 1u})
    for (std::uint64_t index : {0u, 1u, 2u})
      for (std::uint32_t tag : {0u, 1u}) first.insert(RandomStream(seed, index, tag)());
  EXPECT_EQ(first.size(), 12u);
}

TEST(RandomStream, UniformIsOpenAndCentered) {
  RandomStream rng(5);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // sd of the mean is sqrt(1/12/n)
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RandomStream, ExponentialAndNormalMoments) {
  RandomStream rng(11);
  const int n = 400000;
  double e1 = 0, e2 = 0, z1 = 0, z2 = 0;
  for (int i = 0; i < n; ++i) {
    const double e = exponential(rng);
    const double z = standard_normal(rng);
    e1 += e, e2 += e * e, z1 += z, z2 += z * z;
  }
  EXPECT_NEAR(e1 / n, 1.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(e2 / n, 2.0, 4.0 * std::sqrt(20.0 / n));
  EXPECT_NEAR(z1 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(z2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(RandomStream, LogGammaVariateMean) {
  for (double shape : {0.05, 0.5, 3.0}) {
    RandomStream rng(19, 0, static_cast<std::uint32_t>(shape * 100));
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::exp(log_gamma_variate(rng, shape));
    EXPECT_NEAR(sum / n, shape, 4.0 * std::sqrt(shape / n)) << "shape " << shape;
  }
}

}  // namespace
}  // namespace lcoal
