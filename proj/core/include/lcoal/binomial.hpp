#pragma once

#include <cstdint>

#include "lcoal/random.hpp"

namespace lcoal {

/// Exact Binomial(trials, p) variate.
///
/// `p` and `q` are the success and failure probabilities with p + q == 1; both
/// are passed so callers holding an accurate complement (e.g. eta next to
/// 1 - eta) keep full precision when p is within rounding of 1. The sampler
/// works on min(p, q) and reflects. Small means (trials * min(p,q) < 10) use
/// geometric-gap inversion; otherwise Hormann's transformed rejection with
/// squeeze (BTRS). `trials` may be as large as 2^53.
std::int64_t binomial(RandomStream& rng, std::int64_t trials, double p, double q);

inline std::int64_t binomial(RandomStream& rng, std::int64_t trials, double p) {
  return binomial(rng, trials, p, 1.0 - p);
}

}  // namespace lcoal
