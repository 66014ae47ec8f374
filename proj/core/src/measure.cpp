#include "lcoal/measure.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lcoal/error.hpp"
#include "lcoal/quadrature.hpp"

namespace lcoal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest text that parses back to x.
std::string format_number(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? end : buf);
}

double parse_number(std::string_view text, std::string_view context) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError("cannot parse number '" + std::string(text) + "' in " +
                      std::string(context));
  }
  return value;
}

// Mark from a log-depth V >= 0.
Mark mark_from_depth(double depth) {
  return {-std::expm1(-depth), std::exp(-depth)};
}

// log of the level-p quantile of Beta(a, b), for quantiles at most 1/2. Deep in
// the lower tail I_x(a,b) = x^a / (a B(a,b)) (1 + a(1-b)x/(a+1) + O(x^2)) is
// inverted directly, where the root finder may give up.
double log_beta_quantile_small(double a, double b, double p) {
  if (p <= 0.0) return -kInf;
  using boost::math::lgamma;
  const double log_beta = lgamma(a) + lgamma(b) - lgamma(a + b);
  const double lead = std::log(p) + std::log(a) + log_beta;
  const double x0 = std::exp(lead / a);
  if (x0 < 1e-7) return (lead - std::log1p(a * (1.0 - b) * x0 / (a + 1.0))) / a;
  try {
    return std::log(boost::math::ibeta_inv(a, b, p));
  } catch (const std::exception& e) {
    throw NumericError("beta quantile failed at level " + format_number(p) + ": " + e.what());
  }
}

LogMark log_mark_from_depth(double depth) {
  return {std::log(-std::expm1(-depth)), -depth};
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::Uniform: return "uniform";
    case Family::Beta: return "beta";
    case Family::LogPareto: return "logpareto";
    case Family::LogLogPareto: return "loglogpareto";
    case Family::Tabulated: return "tabulated";
  }
  return "unknown";
}

std::string_view verdict_name(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// QuantileGrid

QuantileGrid::QuantileGrid(std::vector<double> u, std::vector<double> v)
    : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size()) throw ConfigError("quantile grid: u and v differ in length");
  if (u_.size() < 2) throw ConfigError("quantile grid: need at least two points");
  if (u_.front() != 0.0 || u_.back() != 1.0) {
    throw ConfigError("quantile grid: u must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!std::isfinite(u_[i]) || !std::isfinite(v_[i])) {
      throw ConfigError("quantile grid: non-finite entry at row " + std::to_string(i));
    }
    if (v_[i] < 0.0) throw ConfigError("quantile grid: v must be >= 0");
    if (i > 0 && !(u_[i] > u_[i - 1])) {
      throw ConfigError("quantile grid: u must be strictly increasing");
    }
    if (i > 0 && v_[i] < v_[i - 1]) {
      throw ConfigError("quantile grid: v must be non-decreasing");
    }
  }
  // An atom at V = 0 is an atom of nu at x = 0.
  if (v_[0] == 0.0 && v_[1] == 0.0) {
    throw ConfigError("quantile grid: positive mass at V = 0 (atom of nu at 0)");
  }
}

QuantileGrid QuantileGrid::parse_csv(std::istream& in, std::string_view source) {
  std::string line;
  const std::string context = "quantile grid " + std::string(source);
  if (!std::getline(in, line)) throw ConfigError(context + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v") throw ConfigError(context + ": header must be 'u,v'");
  std::vector<double> u, v;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(context + ": malformed row '" + line + "'");
    u.push_back(parse_number(std::string_view(line).substr(0, comma), context));
    v.push_back(parse_number(std::string_view(line).substr(comma + 1), context));
  }
  return QuantileGrid(std::move(u), std::move(v));
}

QuantileGrid QuantileGrid::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open quantile grid file '" + path.string() + "'");
  return parse_csv(in, path.string());
}

double QuantileGrid::quantile(double level) const {
  if (level <= 0.0) return v_.front();
  if (level >= 1.0) return v_.back();
  const auto it = std::upper_bound(u_.begin(), u_.end(), level);
  const std::size_t i = static_cast<std::size_t>(it - u_.begin()) - 1;
  const double w = (level - u_[i]) / (u_[i + 1] - u_[i]);
  return v_[i] + (v_[i + 1] - v_[i]) * w;
}

double QuantileGrid::probability_below(double t) const {
  if (t <= v_.front()) return 0.0;
  if (t > v_.back()) return 1.0;
  const auto it = std::lower_bound(v_.begin(), v_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - v_.begin());
  // v_[i-1] < t <= v_[i]
  const double w = (t - v_[i - 1]) / (v_[i] - v_[i - 1]);
  return u_[i - 1] + (u_[i] - u_[i - 1]) * w;
}

// ---------------------------------------------------------------------------
// CharacteristicMeasure

CharacteristicMeasure::CharacteristicMeasure(Family family, double p1, double p2)
    : family_(family), p1_(p1), p2_(p2) {}

CharacteristicMeasure CharacteristicMeasure::uniform() {
  return CharacteristicMeasure(Family::Uniform, 1.0, 1.0);
}

CharacteristicMeasure CharacteristicMeasure::beta(double theta, double b) {
  if (!(theta > 0.0 && std::isfinite(theta)) || !(b > 0.0 && std::isfinite(b))) {
    throw ConfigError("beta measure needs theta > 0 and b > 0");
  }
  return CharacteristicMeasure(Family::Beta, theta, b);
}

CharacteristicMeasure CharacteristicMeasure::log_pareto(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ConfigError("logpareto measure needs alpha in (0, 2]");
  }
  return CharacteristicMeasure(Family::LogPareto, alpha, 0.0);
}

CharacteristicMeasure CharacteristicMeasure::log_log_pareto() {
  return CharacteristicMeasure(Family::LogLogPareto, 0.0, 0.0);
}

CharacteristicMeasure CharacteristicMeasure::tabulated(QuantileGrid grid, std::string source) {
  CharacteristicMeasure m(Family::Tabulated, 0.0, 0.0);
  m.grid_ = std::make_shared<const QuantileGrid>(std::move(grid));
  m.source_ = std::move(source);
  return m;
}

CharacteristicMeasure CharacteristicMeasure::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;
  const std::string context = "measure '" + std::string(spec) + "'";

  if (name == "uniform" && !has_args) return uniform();
  if (name == "loglogpareto" && !has_args) return log_log_pareto();
  if (name == "logpareto" && has_args) return log_pareto(parse_number(args, context));
  if (name == "beta" && has_args) {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw ConfigError(context + ": expected beta:<theta>,<b>");
    return beta(parse_number(args.substr(0, comma), context),
                parse_number(args.substr(comma + 1), context));
  }
  if (name == "tabulated" && has_args && !args.empty()) {
    return tabulated(QuantileGrid::read_csv(std::string(args)), std::string(args));
  }
  throw ConfigError("unknown " + context +
                    " (expected uniform, beta:<theta>,<b>, logpareto:<alpha>, "
                    "loglogpareto or tabulated:<path>)");
}

double CharacteristicMeasure::theta() const {
  if (!has_beta_form()) throw std::logic_error("theta() on a non-beta measure");
  return p1_;
}

double CharacteristicMeasure::b() const {
  if (!has_beta_form()) throw std::logic_error("b() on a non-beta measure");
  return p2_;
}

double CharacteristicMeasure::alpha() const {
  if (family_ != Family::LogPareto) throw std::logic_error("alpha() on a non-logpareto measure");
  return p1_;
}

const QuantileGrid& CharacteristicMeasure::grid() const {
  if (!grid_) throw std::logic_error("grid() on a non-tabulated measure");
  return *grid_;
}

std::string CharacteristicMeasure::spec() const {
  switch (family_) {
    case Family::Uniform: return "uniform";
    case Family::Beta: return "beta:" + format_number(p1_) + "," + format_number(p2_);
    case Family::LogPareto: return "logpareto:" + format_number(p1_);
    case Family::LogLogPareto: return "loglogpareto";
    case Family::Tabulated: return "tabulated:" + source_;
  }
  return {};
}

Mark CharacteristicMeasure::sample(RandomStream& rng) const {
  switch (family_) {
    case Family::Uniform: {
      const double u = rng.uniform();
      return {u, 1.0 - u};
    }
    case Family::Beta: {
      if (p1_ == 1.0 && p2_ == 1.0) {
        const double u = rng.uniform();
        return {u, 1.0 - u};
      }
      if (p1_ == 1.0) {  // eta = U^{1/b}
        const double log_tail = std::log(rng.uniform()) / p2_;
        return {-std::expm1(log_tail), std::exp(log_tail)};
      }
      if (p2_ == 1.0) {  // x = U^{1/theta}
        const double log_head = std::log(rng.uniform()) / p1_;
        return {std::exp(log_head), -std::expm1(log_head)};
      }
      const double g_head = log_gamma_variate(rng, p1_);
      const double g_tail = log_gamma_variate(rng, p2_);
      return {1.0 / (1.0 + std::exp(g_tail - g_head)),
              1.0 / (1.0 + std::exp(g_head - g_tail))};
    }
    case Family::LogPareto:
      return mark_from_depth(std::pow(rng.uniform(), -1.0 / p1_));
    case Family::LogLogPareto:
      return mark_from_depth(std::exp(1.0 / rng.uniform() - 1.0));
    case Family::Tabulated:
      return mark_from_depth(grid_->quantile(rng.uniform()));
  }
  return {0.5, 0.5};
}

LogMark CharacteristicMeasure::at_level(double level) const {
  switch (family_) {
    case Family::Uniform:
      return {std::log(level), std::log1p(-level)};
    case Family::Beta: {
      // V <= v  <=>  eta >= e^{-v};  x ~ Beta(theta, b), eta ~ Beta(b, theta).
      // Only the smaller of x and eta is inverted; the other follows by log1p.
      if (level <= boost::math::ibeta(p1_, p2_, 0.5)) {
        const double log_x = log_beta_quantile_small(p1_, p2_, level);
        return {log_x, std::log1p(-std::exp(log_x))};
      }
      const double log_eta = log_beta_quantile_small(p2_, p1_, 1.0 - level);
      return {std::log1p(-std::exp(log_eta)), log_eta};
    }
    case Family::LogPareto:
      return log_mark_from_depth(std::pow(1.0 - level, -1.0 / p1_));
    case Family::LogLogPareto:
      return log_mark_from_depth(std::exp(1.0 / (1.0 - level) - 1.0));
    case Family::Tabulated:
      return log_mark_from_depth(grid_->quantile(level));
  }
  return {};
}

double CharacteristicMeasure::cdf_depth(double v) const {
  if (v <= 0.0) return 0.0;
  switch (family_) {
    case Family::Uniform: return -std::expm1(-v);
    case Family::Beta: return boost::math::ibetac(p2_, p1_, std::exp(-v));
    case Family::LogPareto: return v <= 1.0 ? 0.0 : -std::expm1(-p1_ * std::log(v));
    case Family::LogLogPareto: return v <= 1.0 ? 0.0 : 1.0 - 1.0 / (1.0 + std::log(v));
    case Family::Tabulated: return grid_->probability_below(v);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Operations

double sample_one_minus_eta(const CharacteristicMeasure& measure, RandomStream& rng) {
  const double head = measure.sample(rng).head;
  return std::clamp(head, std::numeric_limits<double>::denorm_min(),
                    std::nextafter(1.0, 0.0));
}

double tail_eta(const CharacteristicMeasure& measure, double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("tail_eta: x must lie in (0,1)");
  const double depth = -std::log(x);
  switch (measure.family()) {
    case Family::Uniform: return x;
    case Family::Beta: return boost::math::ibeta(measure.b(), measure.theta(), x);
    case Family::LogPareto: return depth <= 1.0 ? 1.0 : std::pow(depth, -measure.alpha());
    case Family::LogLogPareto: return depth <= 1.0 ? 1.0 : 1.0 / (1.0 + std::log(depth));
    case Family::Tabulated: return 1.0 - measure.grid().probability_below(depth);
  }
  return 0.0;
}

LogMoments log_moments(const CharacteristicMeasure& measure) {
  switch (measure.family()) {
    case Family::Uniform:
    case Family::Beta: {
      using boost::math::digamma;
      using boost::math::trigamma;
      const double t = measure.theta(), b = measure.b();
      return {digamma(t + b) - digamma(b), trigamma(b) - trigamma(t + b)};
    }
    case Family::LogPareto: {
      const double a = measure.alpha();
      return {a > 1.0 ? a / (a - 1.0) : kInf, kInf};
    }
    case Family::LogLogPareto:
      return {kInf, kInf};
    case Family::Tabulated: {
      // V is piecewise linear in the level, so both moments integrate exactly.
      const auto u = measure.grid().u();
      const auto v = measure.grid().v();
      double first = 0.0, second = 0.0;
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double w = u[i + 1] - u[i];
        first += w * 0.5 * (v[i] + v[i + 1]);
        second += w * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]) / 3.0;
      }
      return {first, std::max(0.0, second - first * first)};
    }
  }
  return {kInf, kInf};
}

double mean_x(const CharacteristicMeasure& measure) {
  switch (measure.family()) {
    case Family::Uniform:
    case Family::Beta:
      return measure.theta() / (measure.theta() + measure.b());
    case Family::LogPareto:
    case Family::LogLogPareto: {
      const auto head = [&](double level) {
        return std::exp(measure.at_level(level).log_head);
      };
      return integrate(head, 0.0, 1.0, "mean_x " + measure.spec()).value;
    }
    case Family::Tabulated: {
      const auto u = measure.grid().u();
      const auto v = measure.grid().v();
      double tail = 0.0;
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double d = v[i + 1] - v[i];
        const double avg = d > 0.0 ? std::exp(-v[i]) * (-std::expm1(-d)) / d : std::exp(-v[i]);
        tail += (u[i + 1] - u[i]) * avg;
      }
      return 1.0 - tail;
    }
  }
  return 0.0;
}

namespace {

double log_integrability_tabulated(const QuantileGrid& grid) {
  // integral of -log(1 - e^{-V}) over the level, segment by segment in V
  const auto u = grid.u();
  const auto v = grid.v();
  const auto integrand = [](double depth) { return -std::log(-std::expm1(-depth)); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double w = u[i + 1] - u[i];
    const double d = v[i + 1] - v[i];
    if (d == 0.0) {
      total += w * integrand(v[i]);
      continue;
    }
    const Estimate e = v[i] == 0.0
                           ? integrate_singular(integrand, v[i], v[i + 1], "log-integrability")
                           : integrate(integrand, v[i], v[i + 1], "log-integrability");
    total += w * e.value / d;
  }
  return total;
}

AssumptionNote support_note_tabulated(const QuantileGrid& grid) {
  const auto v = grid.v();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] > v[i]) {
      return {"i", Verdict::Satisfied, std::nullopt,
              "interpolated quantile has a non-flat segment, so the support contains an interval"};
    }
  }
  // A flat grid is a single atom, and one point always lies on some 1 - delta gamma^n.
  return {"i", Verdict::Violated, std::nullopt,
          "support is a single atom, which lies on a geometric sequence 1 - delta gamma^n"};
}

}  // namespace

std::vector<AssumptionNote> validate(const CharacteristicMeasure& measure) {
  std::vector<AssumptionNote> notes;
  switch (measure.family()) {
    case Family::Uniform:
    case Family::Beta: {
      const double t = measure.theta(), b = measure.b();
      notes.push_back({"i", Verdict::Satisfied, std::nullopt,
                       "beta law has a density on (0,1); its support is the whole interval"});
      notes.push_back({"ii", Verdict::Satisfied,
                       boost::math::digamma(t + b) - boost::math::digamma(t),
                       "E(-log x) = digamma(theta + b) - digamma(theta) is finite for theta > 0"});
      break;
    }
    case Family::LogPareto:
    case Family::LogLogPareto: {
      notes.push_back({"i", Verdict::Satisfied, std::nullopt,
                       "support is the interval [1 - e^{-1}, 1)"});
      const auto integrand = [&](double level) { return -measure.at_level(level).log_head; };
      const double value = integrate(integrand, 0.0, 1.0, "log-integrability").value;
      notes.push_back({"ii", Verdict::Satisfied, value,
                       "x >= 1 - e^{-1} on the support, so |log x| <= -log(1 - e^{-1})"});
      break;
    }
    case Family::Tabulated: {
      notes.push_back(support_note_tabulated(measure.grid()));
      const double value = log_integrability_tabulated(measure.grid());
      notes.push_back({"ii", std::isfinite(value) ? Verdict::Satisfied : Verdict::Violated, value,
                       "numeric integral of -log(1 - e^{-V}) over the quantile grid"});
      break;
    }
  }
  return notes;
}

}  // namespace lcoal
