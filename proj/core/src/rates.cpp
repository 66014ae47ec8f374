#include "lcoal/rates.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lcoal/error.hpp"

namespace lcoal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Randomized quasi-Monte Carlo rule for Tabulated measures: kShifts random
// shifts of a kPoints-point lattice in the level, 2^20 evaluations in total.
constexpr int kShifts = 16;
constexpr int kPoints = 1 << 16;
constexpr std::uint64_t kShiftSeed = 0x7AB17A7EDULL;

struct LogEstimate {
  double log_value;
  double rel_error;
};

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

void check_indices(std::int64_t m, std::int64_t k) {
  if (m < 1 || k < 1 || k > m) {
    throw std::out_of_range("rate indices must satisfy 1 <= k <= m (m=" + std::to_string(m) +
                            ", k=" + std::to_string(k) + ")");
  }
}

double log_lambda_beta(double theta, double b, std::int64_t m, std::int64_t k) {
  using boost::math::lgamma;
  const double kk = static_cast<double>(k), rest = static_cast<double>(m - k);
  return lgamma(kk + theta) + lgamma(rest + b) - lgamma(static_cast<double>(m) + theta + b) -
         (lgamma(theta) + lgamma(b) - lgamma(theta + b));
}

// Lower end of the support of V.
double depth_floor(const CharacteristicMeasure& measure) {
  switch (measure.family()) {
    case Family::LogPareto:
    case Family::LogLogPareto: return 1.0;
    case Family::Tabulated: return measure.grid().v().front();
    default: return 0.0;
  }
}

double depth_ceiling(const CharacteristicMeasure& measure) {
  return measure.family() == Family::Tabulated ? measure.grid().v().back() : kInf;
}

LogEstimate log_lambda_by_quadrature(const CharacteristicMeasure& measure, std::int64_t m,
                                     std::int64_t k) {
  if (measure.family() == Family::Tabulated) {
    throw ConfigError("quadrature route is not available for tabulated measures");
  }
  const double heads = static_cast<double>(k);
  const double tails = static_cast<double>(m - k);
  const auto log_phi_depth = [&](double v) {
    return heads * std::log(-std::expm1(-v)) - tails * v;
  };
  // log phi is concave in the depth with its maximum at log(m / (m-k)).
  double mode = k == m ? kInf : -std::log1p(-heads / static_cast<double>(m));
  mode = std::clamp(mode, depth_floor(measure), depth_ceiling(measure));
  const double shift = std::isinf(mode) ? 0.0 : log_phi_depth(mode);
  const double split = std::isinf(mode) ? 1.0 : measure.cdf_depth(mode);

  const auto scaled = [&](double level) {
    const LogMark mark = measure.at_level(level);
    double s = heads * mark.log_head - shift;
    if (tails > 0.0) s += tails * mark.log_tail;
    return std::exp(s);
  };
  const std::string what = "lambda(" + std::to_string(m) + "," + std::to_string(k) + ") of " +
                           measure.spec();
  Estimate left, right;
  if (split > 0.0) left = integrate_singular(scaled, 0.0, split, what);
  if (split < 1.0) right = integrate_singular(scaled, split, 1.0, what);
  const double total = left.value + right.value;
  if (!(total > 0.0)) throw NumericError("non-positive quadrature value for " + what);
  return {shift + std::log(total), (left.error + right.error) / total};
}

// Level-space point set of the randomized lattice rule.
struct LevelPoints {
  std::vector<double> log_head;
  std::vector<double> log_tail;
};

LevelPoints level_points(const CharacteristicMeasure& measure) {
  LevelPoints pts;
  pts.log_head.resize(static_cast<std::size_t>(kShifts) * kPoints);
  pts.log_tail.resize(pts.log_head.size());
  RandomStream rng(kShiftSeed);
  std::size_t idx = 0;
  for (int s = 0; s < kShifts; ++s) {
    const double shift = rng.uniform();
    for (int j = 0; j < kPoints; ++j, ++idx) {
      const double level = (static_cast<double>(j) + shift) / kPoints;
      const LogMark mark = measure.at_level(level);
      pts.log_head[idx] = mark.log_head;
      pts.log_tail[idx] = mark.log_tail;
    }
  }
  return pts;
}

// Mean of f over the point set, with the standard error across shifts.
template <class F>
Estimate shifted_mean(F f) {
  std::array<double, kShifts> means{};
  std::size_t idx = 0;
  for (auto& mean : means) {
    double acc = 0.0;
    for (int j = 0; j < kPoints; ++j, ++idx) acc += f(idx);
    mean = acc / kPoints;
  }
  // Shift means agree to many digits, so take deviations from their mean.
  const double mean = std::accumulate(means.begin(), means.end(), 0.0) / kShifts;
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  return {mean, std::sqrt(ss / (kShifts - 1) / kShifts)};
}

LogEstimate log_lambda_by_qmc(const LevelPoints& pts, std::int64_t m, std::int64_t k) {
  const double heads = static_cast<double>(k);
  const double tails = static_cast<double>(m - k);
  const auto log_phi = [&](std::size_t i) {
    double s = heads * pts.log_head[i];
    if (tails > 0.0) s += tails * pts.log_tail[i];
    return s;
  };
  double shift = -kInf;
  for (std::size_t i = 0; i < pts.log_head.size(); ++i) shift = std::max(shift, log_phi(i));
  if (!std::isfinite(shift)) {
    throw NumericError("quasi-Monte Carlo rule found no mass for lambda(" + std::to_string(m) +
                       "," + std::to_string(k) + ")");
  }
  const Estimate e = shifted_mean([&](std::size_t i) { return std::exp(log_phi(i) - shift); });
  return {shift + std::log(e.value), e.error / e.value};
}

Estimate to_estimate(const LogEstimate& e) {
  const double value = std::exp(e.log_value);
  return {value, value * e.rel_error};
}

double log_g_total_beta(double theta, double b, std::int64_t n) {
  // g_n = 1 - E eta^{n-1} * (1 + (n-1) theta / (theta + b + n - 1))
  const double steps = static_cast<double>(n - 1);
  double log_p = 0.0;
  if (n - 1 <= 100000) {
    for (std::int64_t j = 0; j < n - 1; ++j) {
      log_p += std::log1p(-theta / (theta + b + static_cast<double>(j)));
    }
  } else {
    using boost::math::lgamma;
    log_p = lgamma(b + steps) - lgamma(b) - lgamma(theta + b + steps) + lgamma(theta + b);
  }
  const double p = std::exp(log_p);
  const double value = -std::expm1(log_p) - p * steps * theta / (theta + b + steps);
  return std::log(value);
}

}  // namespace

double log_binomial_coefficient(std::int64_t n, std::int64_t j) {
  if (j < 0 || j > n) return -kInf;
  using boost::math::lgamma;
  return lgamma(static_cast<double>(n) + 1.0) - lgamma(static_cast<double>(j) + 1.0) -
         lgamma(static_cast<double>(n - j) + 1.0);
}

Estimate lambda_mk(const CharacteristicMeasure& measure, std::int64_t m, std::int64_t k) {
  check_indices(m, k);
  switch (measure.family()) {
    case Family::Uniform:
    case Family::Beta:
      return {std::exp(log_lambda_beta(measure.theta(), measure.b(), m, k)), 0.0};
    case Family::LogPareto:
    case Family::LogLogPareto:
      return to_estimate(log_lambda_by_quadrature(measure, m, k));
    case Family::Tabulated:
      return to_estimate(log_lambda_by_qmc(level_points(measure), m, k));
  }
  return {};
}

Estimate lambda_mk_quadrature(const CharacteristicMeasure& measure, std::int64_t m,
                              std::int64_t k) {
  check_indices(m, k);
  return to_estimate(log_lambda_by_quadrature(measure, m, k));
}

Estimate g_nm(const CharacteristicMeasure& measure, std::int64_t n, std::int64_t m) {
  if (n < 2 || m < 1 || m > n - 1) {
    throw std::out_of_range("g_nm needs n >= 2 and 1 <= m <= n-1");
  }
  if (measure.has_beta_form()) {
    return {std::exp(log_binomial_coefficient(n, m - 1) +
                     log_lambda_beta(measure.theta(), measure.b(), n, n - m + 1)),
            0.0};
  }
  const Estimate lam = lambda_mk(measure, n, n - m + 1);
  const double factor = std::exp(log_binomial_coefficient(n, m - 1));
  return {factor * lam.value, factor * lam.error};
}

Estimate g_total(const CharacteristicMeasure& measure, std::int64_t n) {
  if (n < 2) throw std::out_of_range("g_total needs n >= 2");
  if (measure.has_beta_form()) {
    return {std::exp(log_g_total_beta(measure.theta(), measure.b(), n)), 0.0};
  }
  // P(Binomial(n, x) >= 2) = I_x(2, n-1), stable for every x.
  const double tail_shape = static_cast<double>(n - 1);
  const auto at_least_two = [tail_shape](double log_head) {
    return boost::math::ibeta(2.0, tail_shape, std::exp(log_head));
  };
  if (measure.family() == Family::Tabulated) {
    const LevelPoints pts = level_points(measure);
    return shifted_mean([&](std::size_t i) { return at_least_two(pts.log_head[i]); });
  }
  return integrate_singular([&](double level) { return at_least_two(measure.at_level(level).log_head); },
                   0.0, 1.0, "g_" + std::to_string(n) + " of " + measure.spec());
}

// ---------------------------------------------------------------------------
// RateTable

RateTable::RateTable(CharacteristicMeasure measure, std::int64_t n_max)
    : measure_(std::move(measure)), n_max_(n_max) {}

RateTable RateTable::build(const CharacteristicMeasure& measure, std::int64_t n_max,
                           RateMethod method) {
  if (n_max < 2) throw ConfigError("rate table needs n_max >= 2");
  if (method == RateMethod::Auto) {
    switch (measure.family()) {
      case Family::Uniform:
      case Family::Beta: method = RateMethod::ClosedForm; break;
      case Family::Tabulated: method = RateMethod::QuasiMonteCarlo; break;
      default: method = RateMethod::Quadrature; break;
    }
  }
  if (method == RateMethod::ClosedForm && !measure.has_beta_form()) {
    throw ConfigError("closed-form rates exist only for uniform and beta measures");
  }
  if (method == RateMethod::Quadrature && measure.family() == Family::Tabulated) {
    throw ConfigError("quadrature rates are not available for tabulated measures");
  }

  RateTable table(measure, n_max);
  const auto rows = static_cast<std::size_t>(n_max);
  table.log_lambda_.assign(rows * (rows + 1) / 2, 0.0);
  const auto at = [&](std::int64_t m, std::int64_t k) -> double& {
    return table.log_lambda_[static_cast<std::size_t>(m * (m - 1) / 2 + (k - 1))];
  };

  if (method == RateMethod::ClosedForm) {
    using boost::math::lgamma;
    const double theta = measure.theta(), b = measure.b();
    const double norm = lgamma(theta) + lgamma(b) - lgamma(theta + b);
    std::vector<double> head_terms(rows + 1), tail_terms(rows + 1), totals(rows + 1);
    for (std::size_t j = 0; j <= rows; ++j) {
      const double x = static_cast<double>(j);
      head_terms[j] = lgamma(x + theta);
      tail_terms[j] = lgamma(x + b);
      totals[j] = lgamma(x + theta + b);
    }
    for (std::int64_t m = 1; m <= n_max; ++m) {
      for (std::int64_t k = 1; k <= m; ++k) {
        at(m, k) = head_terms[static_cast<std::size_t>(k)] +
                   tail_terms[static_cast<std::size_t>(m - k)] -
                   totals[static_cast<std::size_t>(m)] - norm;
      }
    }
  } else {
    if (method == RateMethod::Quadrature) {
      for (std::int64_t k = 1; k <= n_max; ++k) {
        at(n_max, k) = log_lambda_by_quadrature(measure, n_max, k).log_value;
      }
    } else {
      const LevelPoints pts = level_points(measure);
      for (std::int64_t k = 1; k <= n_max; ++k) {
        at(n_max, k) = log_lambda_by_qmc(pts, n_max, k).log_value;
      }
    }
    for (std::int64_t m = n_max - 1; m >= 1; --m) {
      for (std::int64_t k = 1; k <= m; ++k) at(m, k) = log_add(at(m + 1, k), at(m + 1, k + 1));
    }
  }
  table.finish();
  return table;
}

void RateTable::finish() {
  const auto rows = static_cast<std::size_t>(n_max_);
  log_factorial_.resize(rows + 1);
  for (std::size_t j = 0; j <= rows; ++j) {
    log_factorial_[j] = boost::math::lgamma(static_cast<double>(j) + 1.0);
  }
  log_g_.assign(rows + 1, -kInf);
  g_total_.assign(rows + 1, 0.0);
  jump_cdf_.assign((rows - 1) * rows / 2, 0.0);
  std::vector<double> row;
  for (std::int64_t n = 2; n <= n_max_; ++n) {
    row.resize(static_cast<std::size_t>(n - 1));
    double peak = -kInf;
    for (std::int64_t m = 1; m <= n - 1; ++m) {
      row[static_cast<std::size_t>(m - 1)] = log_g(n, m);
      peak = std::max(peak, row[static_cast<std::size_t>(m - 1)]);
    }
    // Scaled sum in extended precision; keeps exact cases such as g_3 = 1/2 exact.
    long double scaled = 0.0L;
    for (double r : row) scaled += std::exp(static_cast<long double>(r) - peak);
    const double total = peak + static_cast<double>(std::log(scaled));
    log_g_[static_cast<std::size_t>(n)] = total;
    g_total_[static_cast<std::size_t>(n)] = static_cast<double>(std::exp(static_cast<long double>(peak)) * scaled);
    double* cdf = jump_cdf_.data() + (n - 1) * (n - 2) / 2;
    double acc = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      acc += std::exp(row[i] - total);
      cdf[i] = acc;
    }
    cdf[row.size() - 1] = 1.0;
  }
}

void RateTable::check_state(std::int64_t n) const {
  if (n < 2 || n > n_max_) {
    throw std::out_of_range("state " + std::to_string(n) + " outside the rate table [2, " +
                            std::to_string(n_max_) + "]");
  }
}

double RateTable::log_lambda(std::int64_t m, std::int64_t k) const {
  check_indices(m, k);
  if (m > n_max_) throw std::out_of_range("lambda row beyond n_max");
  return log_lambda_[static_cast<std::size_t>(m * (m - 1) / 2 + (k - 1))];
}

double RateTable::lambda(std::int64_t m, std::int64_t k) const {
  return std::exp(log_lambda(m, k));
}

double RateTable::log_g(std::int64_t n, std::int64_t m) const {
  check_state(n);
  if (m < 1 || m > n - 1) throw std::out_of_range("g_{n,m} needs 1 <= m <= n-1");
  const auto f = [&](std::int64_t j) { return log_factorial_[static_cast<std::size_t>(j)]; };
  return f(n) - f(m - 1) - f(n - m + 1) + log_lambda(n, n - m + 1);
}

double RateTable::g(std::int64_t n, std::int64_t m) const { return std::exp(log_g(n, m)); }

double RateTable::log_g_total(std::int64_t n) const {
  check_state(n);
  return log_g_[static_cast<std::size_t>(n)];
}

double RateTable::g_total(std::int64_t n) const {
  check_state(n);
  return g_total_[static_cast<std::size_t>(n)];
}

double RateTable::jump_probability(std::int64_t n, std::int64_t m) const {
  return std::exp(log_g(n, m) - log_g_total(n));
}

std::span<const double> RateTable::jump_cdf(std::int64_t n) const {
  check_state(n);
  return {jump_cdf_.data() + (n - 1) * (n - 2) / 2, static_cast<std::size_t>(n - 1)};
}

std::int64_t RateTable::sample_jump(std::int64_t n, RandomStream& rng) const {
  const auto cdf = jump_cdf(n);
  const double u = rng.uniform();
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::int64_t>(it - cdf.begin()) + 1;
}

std::vector<double> jump_distribution(const RateTable& table, std::int64_t n) {
  std::vector<double> p(static_cast<std::size_t>(n - 1));
  for (std::int64_t m = 1; m <= n - 1; ++m) {
    p[static_cast<std::size_t>(m - 1)] = table.jump_probability(n, m);
  }
  return p;
}

}  // namespace lcoal
