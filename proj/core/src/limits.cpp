#include "lcoal/limits.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "lcoal/error.hpp"

namespace lcoal {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kRootUpper = 1e12;
constexpr std::uintmax_t kRootIterations = 200;

// Relative 1e-10 is reached well within 40 bits.
const boost::math::tools::eps_tolerance<double> kRootTolerance(40);

[[noreturn]] void root_failure(const char* what, double target) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": no root for target " << target;
  throw NumericError(msg.str());
}

void check_log_n(double log_n) {
  if (!(log_n >= std::log(3.0)) || !std::isfinite(log_n)) {
    throw ConfigError("normalizing constants need n >= 3 (log n = " + std::to_string(log_n) + ")");
  }
}

}  // namespace

std::string_view regime_name(Regime regime) noexcept {
  switch (regime) {
    case Regime::NormalFiniteVariance: return "normal-finite-variance";
    case Regime::NormalTruncatedVariance: return "normal-truncated-variance";
    case Regime::StableAlpha: return "stable-alpha";
    case Regime::StableOne: return "stable-one";
    case Regime::MittagLeffler: return "mittag-leffler";
  }
  return "unknown";
}

RegimeSpec classify(const CharacteristicMeasure& measure, Functional functional) {
  RegimeSpec spec{};
  spec.functional = functional;
  spec.family = measure.family();
  const LogMoments mom = log_moments(measure);
  spec.m1 = mom.m1;
  spec.m2 = mom.m2;
  switch (measure.family()) {
    case Family::Uniform:
    case Family::Beta:
      spec.regime = Regime::NormalFiniteVariance;
      spec.alpha = 2.0;
      break;
    case Family::LogPareto: {
      const double a = measure.alpha();
      spec.alpha = a;
      if (a == 2.0) {
        spec.regime = Regime::NormalTruncatedVariance;
      } else if (a > 1.0) {
        spec.regime = Regime::StableAlpha;
      } else if (a == 1.0) {
        spec.regime = Regime::StableOne;
      } else {
        spec.regime = Regime::MittagLeffler;
      }
      break;
    }
    case Family::LogLogPareto:
      spec.regime = Regime::MittagLeffler;
      spec.alpha = 0.0;
      break;
    case Family::Tabulated:
      throw ConfigError("regime unknown: tabulated measures have no analytic tail");
  }
  return spec;
}

double truncated_scale(double y) {
  const double lo = std::sqrt(std::exp(1.0));
  const auto f = [y](double c) { return c * c / (2.0 * std::log(c)) - y; };
  if (!(f(lo) <= 0.0) || !(f(kRootUpper) >= 0.0)) root_failure("truncated-variance scale", y);
  std::uintmax_t iters = kRootIterations;
  const auto [a, b] = boost::math::tools::bisect(f, lo, kRootUpper, kRootTolerance, iters);
  if (iters >= kRootIterations) root_failure("truncated-variance scale", y);
  return 0.5 * (a + b);
}

double psi_log_pareto_one(double x) { return x * (std::log(x) + 1.0); }

double inverse_psi_log_pareto_one(double y) {
  if (!(y >= 1.0) || !std::isfinite(y)) root_failure("inverse of psi", y);
  if (y == 1.0) return 1.0;
  const auto f = [y](double x) { return psi_log_pareto_one(x) - y; };
  std::uintmax_t iters = kRootIterations;
  const auto [a, b] = boost::math::tools::toms748_solve(f, 1.0, y, kRootTolerance, iters);
  if (iters >= kRootIterations) root_failure("inverse of psi", y);
  return 0.5 * (a + b);
}

double RegimeSpec::a_of_n(double log_n) const { return norm_constants(*this, log_n).a; }
double RegimeSpec::b_of_n(double log_n) const { return norm_constants(*this, log_n).b; }

NormConstants norm_constants(const RegimeSpec& spec, double log_n) {
  check_log_n(log_n);
  const double floor_log_n = std::floor(log_n);
  switch (spec.regime) {
    case Regime::NormalFiniteVariance: {
      const double var = spec.functional == Functional::Tau ? spec.m2 + spec.m1 * spec.m1 : spec.m2;
      return {std::sqrt(var * log_n / (spec.m1 * spec.m1 * spec.m1)), log_n / spec.m1};
    }
    case Regime::NormalTruncatedVariance:
      return {std::pow(spec.m1, -1.5) * truncated_scale(floor_log_n), log_n / spec.m1};
    case Regime::StableAlpha:
      return {std::pow(spec.m1, -(spec.alpha + 1.0) / spec.alpha) *
                  std::pow(floor_log_n, 1.0 / spec.alpha),
              log_n / spec.m1};
    case Regime::StableOne: {
      if (spec.family != Family::LogPareto) {
        throw ConfigError("regime 4 constants are implemented for logpareto:1 only");
      }
      const double b = inverse_psi_log_pareto_one(log_n);
      return {b * b / log_n, b};
    }
    case Regime::MittagLeffler:
      if (spec.family == Family::LogLogPareto) return {1.0 + std::log(log_n), 0.0};
      return {std::pow(log_n, spec.alpha), 0.0};
  }
  throw ConfigError("unknown regime");
}

double ml_moment(const MittagLefflerRef& ref, int k) {
  if (k < 0) throw std::invalid_argument("moment order must be >= 0");
  if (!(ref.alpha >= 0.0 && ref.alpha < 1.0)) {
    throw ConfigError("Mittag-Leffler index must lie in [0,1)");
  }
  using boost::math::lgamma;
  const double kk = static_cast<double>(k);
  return std::exp(lgamma(kk + 1.0) - kk * lgamma(1.0 - ref.alpha) - lgamma(1.0 + kk * ref.alpha));
}

std::complex<double> stable_cf(double alpha, double t) {
  if (!(alpha >= 1.0 && alpha < 2.0)) throw ConfigError("stable index must lie in [1,2)");
  if (t == 0.0) return {1.0, 0.0};
  const double at = std::abs(t);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  if (alpha == 1.0) {
    return std::exp(std::complex<double>(-at * kPi / 2.0, at * std::log(at) * sgn));
  }
  const double scale = std::pow(at, alpha) * boost::math::tgamma(1.0 - alpha);
  return std::exp(-scale * std::complex<double>(std::cos(kPi * alpha / 2.0),
                                                std::sin(kPi * alpha / 2.0) * sgn));
}

double sample_stable(RandomStream& rng, double alpha) {
  if (!(alpha >= 1.0 && alpha < 2.0)) throw ConfigError("stable index must lie in [1,2)");
  constexpr double beta = -1.0;
  const double v = kPi * (rng.uniform() - 0.5);
  const double w = exponential(rng);
  if (alpha == 1.0) {
    const double sigma = kPi / 2.0;
    const double lead = kPi / 2.0 + beta * v;
    const double x = (2.0 / kPi) * (lead * std::tan(v) -
                                    beta * std::log((kPi / 2.0) * w * std::cos(v) / lead));
    return sigma * x + (2.0 / kPi) * beta * sigma * std::log(sigma);
  }
  const double sigma =
      std::pow(boost::math::tgamma(1.0 - alpha) * std::cos(kPi * alpha / 2.0), 1.0 / alpha);
  const double skew = beta * std::tan(kPi * alpha / 2.0);
  const double shift = std::atan(skew) / alpha;
  const double stretch = std::pow(1.0 + skew * skew, 1.0 / (2.0 * alpha));
  const double x = stretch * std::sin(alpha * (v + shift)) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * (v + shift)) / w, (1.0 - alpha) / alpha);
  return sigma * x;
}

}  // namespace lcoal
