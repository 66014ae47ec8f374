#include "lcoal/binomial.hpp"

#include <cmath>
#include <stdexcept>

namespace lcoal {

namespace {

// log(k!) - [(k + 1/2) log(k + 1) - (k + 1) + log(sqrt(2 pi))]
double stirling_tail(double k) {
  static constexpr double kTail[] = {
      0.0810614667953272, 0.0413406959554092, 0.0276779256849983,
      0.02079067210376509, 0.0166446911898211, 0.0138761288230707,
      0.0118967099458917, 0.0104112652619720, 0.00925546218271273,
      0.00833056343336287};
  if (k <= 9) return kTail[static_cast<int>(k)];
  const double kp1 = k + 1.0;
  const double kp1sq = kp1 * kp1;
  return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / kp1;
}

std::int64_t inversion(RandomStream& rng, double trials, double p) {
  // Count geometric gaps until they overrun the number of trials.
  const double log_q = std::log1p(-p);
  double position = 0.0;
  std::int64_t successes = 0;
  for (;;) {
    position += std::ceil(std::log(rng.uniform()) / log_q);
    if (position > trials) return successes;
    ++successes;
  }
}

std::int64_t btrs(RandomStream& rng, double trials, double p) {
  const double spq = std::sqrt(trials * p * (1.0 - p));
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = trials * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double r = p / (1.0 - p);
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double m = std::floor((trials + 1.0) * p);

  for (;;) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + c);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || k > trials) continue;
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound =
        (m + 0.5) * std::log((m + 1.0) / (r * (trials - m + 1.0))) +
        (trials + 1.0) * std::log((trials - m + 1.0) / (trials - k + 1.0)) +
        (k + 0.5) * std::log(r * (trials - k + 1.0) / (k + 1.0)) +
        stirling_tail(m) + stirling_tail(trials - m) - stirling_tail(k) -
        stirling_tail(trials - k);
    if (v <= bound) return static_cast<std::int64_t>(k);
  }
}

}  // namespace

std::int64_t binomial(RandomStream& rng, std::int64_t trials, double p, double q) {
  if (trials < 0) throw std::invalid_argument("binomial: negative trial count");
  if (!(p >= 0.0 && q >= 0.0)) {
    throw std::invalid_argument("binomial: probabilities must be non-negative");
  }
  if (trials == 0) return 0;
  const bool reflect = p > q;
  const double small = reflect ? q : p;
  if (small <= 0.0) return reflect ? trials : 0;

  const double n = static_cast<double>(trials);
  const std::int64_t draw =
      n * small < 10.0 ? inversion(rng, n, small) : btrs(rng, n, small);
  return reflect ? trials - draw : draw;
}

}  // namespace lcoal
