#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcoal/random.hpp"

namespace lcoal {

// Conventions used throughout: a draw from the characteristic measure nu is
// the head probability x = 1 - eta of one Poisson epoch; eta is the tail
// probability and V = -log(eta) its logarithmic depth.

enum class Family { Uniform, Beta, LogPareto, LogLogPareto, Tabulated };

std::string_view family_name(Family family) noexcept;

/// Piecewise-linear inverse CDF of V = -log(eta) on a grid u_0 = 0 < u_1 <
/// ... < u_last = 1 with non-decreasing quantiles v_i >= 0. A flat segment is
/// an atom of mass u_{i+1} - u_i.
class QuantileGrid {
 public:
  QuantileGrid(std::vector<double> u, std::vector<double> v);

  /// CSV with header `u,v`.
  static QuantileGrid parse_csv(std::istream& in, std::string_view source);
  static QuantileGrid read_csv(const std::filesystem::path& path);

  std::span<const double> u() const noexcept { return u_; }
  std::span<const double> v() const noexcept { return v_; }
  std::size_t segments() const noexcept { return u_.size() - 1; }

  double quantile(double level) const;
  /// P(V < t), the Lebesgue measure of {u : Q(u) < t}.
  double probability_below(double t) const;

 private:
  std::vector<double> u_;
  std::vector<double> v_;
};

/// One epoch's coin: head = 1 - eta, tail = eta, each computed to full
/// relative precision (head + tail == 1 up to rounding).
struct Mark {
  double head;
  double tail;
};

struct LogMark {
  double log_head;
  double log_tail;
};

/// Probability measure nu on (0,1). Immutable; cheap to copy.
class CharacteristicMeasure {
 public:
  static CharacteristicMeasure uniform();
  /// nu(dx) proportional to x^{theta-1} (1-x)^{b-1}.
  static CharacteristicMeasure beta(double theta, double b);
  /// Law of 1 - e^{-V} with P(V > t) = t^{-alpha}, t >= 1; alpha in (0, 2].
  static CharacteristicMeasure log_pareto(double alpha);
  /// Law of 1 - e^{-V} with P(V > t) = 1 / (1 + log t), t >= 1.
  static CharacteristicMeasure log_log_pareto();
  static CharacteristicMeasure tabulated(QuantileGrid grid, std::string source = {});

  /// `uniform`, `beta:<theta>,<b>`, `logpareto:<alpha>`, `loglogpareto`,
  /// `tabulated:<path>`. Throws ConfigError.
  static CharacteristicMeasure parse(std::string_view spec);

  Family family() const noexcept { return family_; }
  /// Beta parameters; Uniform reports (1, 1).
  double theta() const;
  double b() const;
  double alpha() const;
  const QuantileGrid& grid() const;
  /// True for Uniform and Beta, whose rates have closed forms.
  bool has_beta_form() const noexcept {
    return family_ == Family::Uniform || family_ == Family::Beta;
  }

  /// Round-trippable specification string.
  std::string spec() const;

  Mark sample(RandomStream& rng) const;

  /// (log x, log eta) at CDF level `level` in (0,1) of V.
  LogMark at_level(double level) const;
  /// P(V <= v).
  double cdf_depth(double v) const;

 private:
  CharacteristicMeasure(Family family, double p1, double p2);

  Family family_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::shared_ptr<const QuantileGrid> grid_;
  std::string source_;
};

/// One draw of 1 - eta, clamped into the open interval (0,1).
double sample_one_minus_eta(const CharacteristicMeasure& measure, RandomStream& rng);

/// P(eta <= x) = nu([1-x, 1)); requires 0 < x < 1.
double tail_eta(const CharacteristicMeasure& measure, double x);

struct LogMoments {
  double m1;  // E(-log eta), possibly +infinity
  double m2;  // Var(log eta), possibly +infinity
};

LogMoments log_moments(const CharacteristicMeasure& measure);

/// p = E(1 - eta) = integral of x nu(dx).
double mean_x(const CharacteristicMeasure& measure);

enum class Verdict { Satisfied, Violated };

std::string_view verdict_name(Verdict verdict) noexcept;

struct AssumptionNote {
  std::string condition;        // "i" (non-geometric support) or "ii" (log-integrability)
  Verdict verdict;
  std::optional<double> value;  // integral of |log x| nu(dx) for condition ii
  std::string detail;
};

/// Standing assumptions (i) and (ii) for the measure.
std::vector<AssumptionNote> validate(const CharacteristicMeasure& measure);

}  // namespace lcoal
