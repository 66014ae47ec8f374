#pragma once

#include <cstdint>
#include <vector>

#include "lcoal/rates.hpp"

namespace lcoal {

struct ExactDistribution {
  std::int64_t n = 0;
  std::vector<std::int64_t> support;  // 1..n-1
  std::vector<double> pmf;
  double mean = 0.0;
  double variance = 0.0;
};

/// Largest n accepted by exact_x_distribution (cubic cost).
inline constexpr std::int64_t kExactMaxStates = 500;

/// Law of X_n by dynamic programming over the death chain:
/// P(X_n = j) = sum_m p_{n,m} P(X_m = j - 1), X_1 = 0.
ExactDistribution exact_x_distribution(const RateTable& table, std::int64_t n);

/// E tau_m for m = 0..n (entries 0 and 1 are zero), from
/// E tau_n = 1/g_n + sum_m p_{n,m} E tau_m.
std::vector<double> exact_expected_times(const RateTable& table, std::int64_t n);

/// q_k = w_k / (w_1 + ... + w_k), w_k = Gamma(k+b-1)/Gamma(k), for k = 1..count
/// (index k-1).
std::vector<double> indicator_probabilities(double b, std::int64_t count);

/// For nu = Beta(1, b), X_n is the sum of independent Bernoulli(q_k),
/// k = 1..n-1; this is their convolution.
ExactDistribution indicator_distribution(double b, std::int64_t n);

}  // namespace lcoal
