#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lcoal/measure.hpp"
#include "lcoal/quadrature.hpp"
#include "lcoal/random.hpp"

namespace lcoal {

// Rates of the block-counting death chain. For 1 <= k <= m
//
//   lambda_{m,k} = integral of x^k (1-x)^{m-k} nu(dx)
//   g_{n,m}      = C(n, m-1) lambda_{n, n-m+1},   1 <= m <= n-1
//   g_n          = sum_m g_{n,m} = integral of P(Binomial(n, x) >= 2) nu(dx)
//
// All products are formed in log space; values are exponentiated last.

/// lambda_{m,k}: closed form for Uniform/Beta, level-space quadrature for the
/// log-Pareto families, randomized quasi-Monte Carlo for Tabulated (the error
/// field is then a standard error).
Estimate lambda_mk(const CharacteristicMeasure& measure, std::int64_t m, std::int64_t k);

/// Quadrature route for lambda_{m,k} over the level u of V = F^{-1}(u). Valid
/// for every non-tabulated family, including Beta (cross-check of the closed form).
Estimate lambda_mk_quadrature(const CharacteristicMeasure& measure, std::int64_t m,
                              std::int64_t k);

Estimate g_nm(const CharacteristicMeasure& measure, std::int64_t n, std::int64_t m);

/// g_n from the direct integral (not the row sum).
Estimate g_total(const CharacteristicMeasure& measure, std::int64_t n);

/// log C(n, j).
double log_binomial_coefficient(std::int64_t n, std::int64_t j);

enum class RateMethod { Auto, ClosedForm, Quadrature, QuasiMonteCarlo };

/// Cached rates for states 1..n_max. Immutable after build().
///
/// Memory is quadratic in n_max (two triangular arrays of doubles).
class RateTable {
 public:
  static constexpr std::int64_t kDefaultMaxStates = 10000;

  /// Auto picks the closed form for Beta families, quadrature for the
  /// log-Pareto families and quasi-Monte Carlo for Tabulated. The non-closed
  /// routes integrate the top row directly and fill lower rows through
  /// lambda_{m,k} = lambda_{m+1,k} + lambda_{m+1,k+1} (a sum of positives).
  static RateTable build(const CharacteristicMeasure& measure, std::int64_t n_max,
                         RateMethod method = RateMethod::Auto);

  const CharacteristicMeasure& measure() const noexcept { return measure_; }
  std::int64_t n_max() const noexcept { return n_max_; }

  double log_lambda(std::int64_t m, std::int64_t k) const;
  double lambda(std::int64_t m, std::int64_t k) const;
  double log_g(std::int64_t n, std::int64_t m) const;
  double g(std::int64_t n, std::int64_t m) const;
  /// Total rate g_n (row sum of the tabulated g_{n,m}).
  double g_total(std::int64_t n) const;
  double log_g_total(std::int64_t n) const;
  /// p_{n,m} = g_{n,m} / g_n.
  double jump_probability(std::int64_t n, std::int64_t m) const;
  /// Cumulative p_{n,1..n-1}; the last entry is exactly 1.
  std::span<const double> jump_cdf(std::int64_t n) const;
  /// Next state of the embedded chain from n.
  std::int64_t sample_jump(std::int64_t n, RandomStream& rng) const;

 private:
  RateTable(CharacteristicMeasure measure, std::int64_t n_max);
  void check_state(std::int64_t n) const;
  void finish();

  CharacteristicMeasure measure_;
  std::int64_t n_max_;
  std::vector<double> log_lambda_;  // row m: entries k = 1..m at m(m-1)/2
  std::vector<double> log_factorial_;  // index j: log j!
  std::vector<double> log_g_;       // index n
  std::vector<double> g_total_;     // index n
  std::vector<double> jump_cdf_;    // row n: entries m = 1..n-1 at (n-1)(n-2)/2
};

/// p_{n,1..n-1} as a probability vector (index m-1).
std::vector<double> jump_distribution(const RateTable& table, std::int64_t n);

}  // namespace lcoal
