#pragma once

#include <complex>
#include <string_view>

#include "lcoal/measure.hpp"
#include "lcoal/random.hpp"

namespace lcoal {

/// Limit regimes for X_n (and tau_n) as n grows:
///   1  m2 finite: normal
///   2  m2 infinite, truncated second moment slowly varying: normal
///   3  -log(eta) in the domain of attraction of an alpha-stable law, 1 < alpha < 2
///   4  alpha = 1 with m1 infinite: 1-stable
///   5  P(-log eta > x) regularly varying with index -alpha, 0 <= alpha < 1:
///      Mittag-Leffler (exponential for alpha = 0)
enum class Regime {
  NormalFiniteVariance = 1,
  NormalTruncatedVariance = 2,
  StableAlpha = 3,
  StableOne = 4,
  MittagLeffler = 5,
};

enum class Functional { X, Tau };

std::string_view regime_name(Regime regime) noexcept;

struct NormConstants {
  double a;
  double b;
};

struct RegimeSpec {
  Regime regime;
  double alpha = 0.0;  // tail index where applicable, 2 in regimes 1-2
  double m1 = 0.0;
  double m2 = 0.0;
  Functional functional = Functional::X;
  Family family = Family::Uniform;

  /// Normalizing constants at log n (log n >= log 3).
  double a_of_n(double log_n) const;
  double b_of_n(double log_n) const;
};

/// Regime of a built-in family. Tabulated measures have no analytic tail and
/// raise ConfigError.
RegimeSpec classify(const CharacteristicMeasure& measure, Functional functional = Functional::X);

/// (a_n, b_n) at log n. Throws NumericError when a root solve fails.
NormConstants norm_constants(const RegimeSpec& spec, double log_n);

/// Regime 2 scale for L(x) = 2 log x: the root c >= sqrt(e) of c^2 / (2 log c) = y.
/// Needs y >= e.
double truncated_scale(double y);

/// psi(x) = x (log x + 1) of the LogPareto(1) family and its inverse on [1, inf).
double psi_log_pareto_one(double x);
double inverse_psi_log_pareto_one(double y);

/// Scaled Mittag-Leffler law theta_alpha, alpha in [0,1).
struct MittagLefflerRef {
  double alpha = 0.0;
};

/// k! / (Gamma(1-alpha)^k Gamma(1 + k alpha)).
double ml_moment(const MittagLefflerRef& ref, int k);

/// Characteristic function of the stable limits in regimes 3 (alpha > 1) and
/// 4 (alpha = 1). alpha in [1,2).
std::complex<double> stable_cf(double alpha, double t);

/// Chambers-Mallows-Stuck draw from the law whose characteristic function is
/// stable_cf(alpha, .): totally skewed to the left (beta = -1) with scale
/// (Gamma(1-alpha) cos(pi alpha/2))^{1/alpha}, or pi/2 when alpha = 1.
double sample_stable(RandomStream& rng, double alpha);

}  // namespace lcoal
