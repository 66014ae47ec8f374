#include "lcoal/oracle.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lcoal/error.hpp"

namespace lcoal {

namespace {

void check_oracle_state(const RateTable& table, std::int64_t n) {
  if (n < 2) throw ConfigError("exact oracle needs n >= 2");
  if (n > kExactMaxStates) {
    throw ConfigError("exact oracle limited to n <= " + std::to_string(kExactMaxStates) +
                      ", got " + std::to_string(n));
  }
  if (n > table.n_max()) {
    throw ConfigError("rate table too small for n=" + std::to_string(n));
  }
}

// Support 1..n-1 from a pmf indexed by the count 0..n-1, with its moments.
ExactDistribution finish(std::int64_t n, const std::vector<double>& by_count) {
  ExactDistribution d;
  d.n = n;
  double s1 = 0.0;
  for (std::int64_t j = 1; j < n; ++j) {
    const double p = by_count[static_cast<std::size_t>(j)];
    d.support.push_back(j);
    d.pmf.push_back(p);
    s1 += static_cast<double>(j) * p;
  }
  double s2 = 0.0;
  for (std::size_t i = 0; i < d.pmf.size(); ++i) {
    const double dev = static_cast<double>(d.support[i]) - s1;
    s2 += dev * dev * d.pmf[i];
  }
  d.mean = s1;
  d.variance = s2;
  return d;
}

}  // namespace

ExactDistribution exact_x_distribution(const RateTable& table, std::int64_t n) {
  check_oracle_state(table, n);
  // law[m][j] = P(X_m = j); X_m <= m - 1.
  std::vector<std::vector<double>> law(static_cast<std::size_t>(n + 1));
  law[1] = {1.0};
  for (std::int64_t m = 2; m <= n; ++m) {
    auto& row = law[static_cast<std::size_t>(m)];
    row.assign(static_cast<std::size_t>(m), 0.0);
    for (std::int64_t next = 1; next < m; ++next) {
      const double p = table.jump_probability(m, next);
      const auto& sub = law[static_cast<std::size_t>(next)];
      for (std::size_t j = 0; j < sub.size(); ++j) row[j + 1] += p * sub[j];
    }
  }
  return finish(n, law[static_cast<std::size_t>(n)]);
}

std::vector<double> exact_expected_times(const RateTable& table, std::int64_t n) {
  if (n < 0) throw ConfigError("n must be non-negative");
  std::vector<double> e(static_cast<std::size_t>(std::max<std::int64_t>(n, 1) + 1), 0.0);
  if (n < 2) return e;
  check_oracle_state(table, n);
  for (std::int64_t m = 2; m <= n; ++m) {
    double acc = 1.0 / table.g_total(m);
    for (std::int64_t next = 2; next < m; ++next) {
      acc += table.jump_probability(m, next) * e[static_cast<std::size_t>(next)];
    }
    e[static_cast<std::size_t>(m)] = acc;
  }
  return e;
}

std::vector<double> indicator_probabilities(double b, std::int64_t count) {
  if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("indicator law needs b > 0");
  using boost::math::lgamma;
  std::vector<double> q(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  double log_total = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 1; k <= count; ++k) {
    const double x = static_cast<double>(k);
    const double log_w = lgamma(x + b - 1.0) - lgamma(x);
    const double hi = std::max(log_total, log_w), lo = std::min(log_total, log_w);
    log_total = hi + std::log1p(std::exp(lo - hi));
    q[static_cast<std::size_t>(k - 1)] = std::exp(log_w - log_total);
  }
  return q;
}

ExactDistribution indicator_distribution(double b, std::int64_t n) {
  if (n < 2) throw ConfigError("indicator law needs n >= 2");
  const auto q = indicator_probabilities(b, n - 1);
  std::vector<double> pmf{1.0};
  for (const double qk : q) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
      next[j] += pmf[j] * (1.0 - qk);
      next[j + 1] += pmf[j] * qk;
    }
    pmf.swap(next);
  }
  return finish(n, pmf);
}

}  // namespace lcoal
