#include "lcoal/random.hpp"

#include <cmath>
#include <stdexcept>

namespace lcoal {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMulA, ctr[0], lo0, hi0);
    mulhilo(kMulB, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index,
                           std::uint32_t tag) noexcept
    : seed_(seed), index_(index), tag_(tag) {}

void RandomStream::refill() {
  if (block_ == std::numeric_limits<std::uint32_t>::max()) {
    throw std::overflow_error("RandomStream: block counter exhausted");
  }
  const std::array<std::uint32_t, 4> ctr{
      block_, tag_, static_cast<std::uint32_t>(index_),
      static_cast<std::uint32_t>(index_ >> 32)};
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                         static_cast<std::uint32_t>(seed_ >> 32)};
  buffer_ = philox4x32(ctr, key);
  ++block_;
  used_ = 0;
}

RandomStream::result_type RandomStream::operator()() {
  if (used_ > 2) refill();
  const std::uint64_t lo = buffer_[used_];
  const std::uint64_t hi = buffer_[used_ + 1];
  used_ += 2;
  return lo | (hi << 32);
}

double RandomStream::uniform() {
  const std::uint64_t bits = (*this)() >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

double exponential(RandomStream& rng) { return -std::log(rng.uniform()); }

double standard_normal(RandomStream& rng) {
  for (;;) {
    const double a = 2.0 * rng.uniform() - 1.0;
    const double b = 2.0 * rng.uniform() - 1.0;
    const double s = a * a + b * b;
    if (s < 1.0 && s > 0.0) {
      return a * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double log_gamma_variate(RandomStream& rng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (shape < 1.0) {
    // G(a) = G(a+1) * U^{1/a}
    const double boost = std::log(rng.uniform()) / shape;
    return log_gamma_variate(rng, shape + 1.0) + boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = standard_normal(rng);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return std::log(d * v);
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) {
      return std::log(d * v);
    }
  }
}

}  // namespace lcoal
