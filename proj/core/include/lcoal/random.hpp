#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lcoal {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit
/// counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// A stream is identified by (seed, tag, index): the seed is the Philox key,
/// while tag and index occupy the upper three counter words. The lowest counter
/// word enumerates blocks inside the stream. Two streams with different
/// identities never share a block, so replicate `i` of a Monte Carlo job draws
/// the same numbers no matter which thread runs it or in which order.
///
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t index = 0,
                        std::uint32_t tag = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform on the open interval (0,1) with 52-bit resolution. Both u and
  /// 1-u are exactly representable, so complements are free of rounding.
  double uniform();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t index() const noexcept { return index_; }
  std::uint32_t tag() const noexcept { return tag_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint32_t tag_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_
};

/// Exponential(1) variate.
double exponential(RandomStream& rng);

/// Standard normal variate (Marsaglia polar method).
double standard_normal(RandomStream& rng);

/// log of a Gamma(shape, 1) variate (Marsaglia-Tsang, with the u^{1/shape}
/// boost for shape < 1). Returned in log space so tiny shapes do not underflow.
double log_gamma_variate(RandomStream& rng, double shape);

/// 64-bit mixing function (splitmix64 finalizer); used to derive stream tags.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace lcoal
