#include "lcoal/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "lcoal/error.hpp"
#include "lcoal/limits.hpp"
#include "lcoal/monte_carlo.hpp"
#include "lcoal/oracle.hpp"
#include "lcoal/rates.hpp"
#include "lcoal/simulate.hpp"
#include "lcoal/statistics.hpp"

namespace lcoal {

namespace {

using Claims = std::vector<ClaimResult>;

ClaimResult make(std::string id, std::string regime, std::int64_t n, std::int64_t replicates,
                 double statistic) {
  ClaimResult c;
  c.claim_id = std::move(id);
  c.regime = std::move(regime);
  c.n = n;
  c.replicates = replicates;
  c.statistic = statistic;
  return c;
}

ClaimResult at_most(std::string id, std::string regime, std::int64_t n, std::int64_t replicates,
                    double statistic, double bound, bool binding = true) {
  auto c = make(std::move(id), std::move(regime), n, replicates, statistic);
  c.comparison = Comparison::AtMost;
  c.upper = bound;
  c.binding = binding;
  c.pass = statistic <= bound;
  return c;
}

ClaimResult at_least(std::string id, std::string regime, std::int64_t n, std::int64_t replicates,
                     double statistic, double bound, bool binding = true) {
  auto c = make(std::move(id), std::move(regime), n, replicates, statistic);
  c.comparison = Comparison::AtLeast;
  c.lower = bound;
  c.binding = binding;
  c.pass = statistic >= bound;
  return c;
}

ClaimResult within(std::string id, std::string regime, std::int64_t n, std::int64_t replicates,
                   double statistic, double lo, double hi) {
  auto c = make(std::move(id), std::move(regime), n, replicates, statistic);
  c.comparison = Comparison::Within;
  c.lower = lo;
  c.upper = hi;
  c.pass = statistic >= lo && statistic <= hi;
  return c;
}

ClaimResult report(std::string id, std::string regime, std::int64_t n, std::int64_t replicates,
                   double statistic) {
  auto c = make(std::move(id), std::move(regime), n, replicates, statistic);
  c.binding = false;
  return c;
}

std::string n_label(std::int64_t n) {
  const int exponent = static_cast<int>(std::lround(std::log10(static_cast<double>(n))));
  std::int64_t p = 1;
  for (int i = 0; i < exponent; ++i) p *= 10;
  return p == n ? "n1e" + std::to_string(exponent) : "n" + std::to_string(n);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> sample_x(const CharacteristicMeasure& mu, std::int64_t n,
                             std::int64_t replicates, std::uint64_t seed, int workers) {
  SamplerJob job{SamplerKind::Epochs, mu, n, nullptr};
  return column_X(monte_carlo(job, replicates, seed, workers));
}

// Rate identities of the closed-form table against the direct total-rate formula.
void rate_identities(const VerifyOptions&, std::uint64_t, Claims& out) {
  constexpr std::int64_t n_max = 200;
  const std::pair<const char*, CharacteristicMeasure> fixtures[] = {
      {"uniform", CharacteristicMeasure::uniform()},
      {"beta21", CharacteristicMeasure::beta(2, 1)},
      {"beta12", CharacteristicMeasure::beta(1, 2)},
  };
  for (const auto& [name, mu] : fixtures) {
    const auto table = RateTable::build(mu, n_max);
    double recursion = 0.0;
    for (std::int64_t m = 1; m < n_max; ++m) {
      for (std::int64_t k = 1; k <= m; ++k) {
        const double lhs = table.lambda(m, k);
        const double rhs = table.lambda(m + 1, k) + table.lambda(m + 1, k + 1);
        recursion = std::max(recursion, std::abs(lhs - rhs) / lhs);
      }
    }
    double row_sum = 0.0;
    for (std::int64_t n = 2; n <= n_max; ++n) {
      double sum = 0.0;
      for (std::int64_t m = 1; m < n; ++m) sum += table.g(n, m);
      const double direct = g_total(mu, n).value;
      row_sum = std::max(row_sum, std::abs(sum - direct) / direct);
    }
    out.push_back(at_most(std::string("C01.recursion.") + name, "rates", n_max, 0, recursion, 1e-10));
    out.push_back(at_most(std::string("C01.row_sum.") + name, "rates", n_max, 0, row_sum, 1e-10));
  }
}

void uniform_jump_law(const VerifyOptions&, std::uint64_t, Claims& out) {
  constexpr std::int64_t n_max = 200;
  const auto table = RateTable::build(CharacteristicMeasure::uniform(), n_max);
  double worst = 0.0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    for (std::int64_t m = 1; m < n; ++m) {
      worst = std::max(worst, std::abs(table.jump_probability(n, m) - 1.0 / static_cast<double>(n - 1)));
    }
  }
  out.push_back(at_most("C02.uniform_jump", "rates", n_max, 0, worst, 1e-12));
}

void oracle_equivalence(const VerifyOptions&, std::uint64_t, Claims& out) {
  constexpr std::int64_t n_max = 50;
  for (const double b : {0.5, 1.0, 2.0, 5.0}) {
    const auto table = RateTable::build(CharacteristicMeasure::beta(1.0, b), n_max);
    double worst = 0.0;
    for (std::int64_t n = 2; n <= n_max; ++n) {
      const auto dp = exact_x_distribution(table, n);
      const auto ind = indicator_distribution(b, n);
      for (std::size_t j = 0; j < dp.pmf.size(); ++j) {
        worst = std::max(worst, std::abs(dp.pmf[j] - ind.pmf[j]));
      }
    }
    std::ostringstream id;
    id << "C03.indicator.b" << b;
    out.push_back(at_most(id.str(), "oracle", n_max, 0, worst, 1e-10));
  }
}

void monte_carlo_vs_oracle(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t n = 100, reps = 100000;
  const auto mu = CharacteristicMeasure::uniform();
  const auto x = sample_x(mu, n, reps, seed, opt.workers);
  double harmonic = 0.0;
  for (std::int64_t k = 1; k < n; ++k) harmonic += 1.0 / static_cast<double>(k);
  const auto ms = mean_and_se(x);
  out.push_back(at_most("C04.mean_z", "oracle", n, reps,
                        std::abs(ms.mean - harmonic) / ms.standard_error, 3.0));

  const auto table = RateTable::build(mu, n);
  const auto dp = exact_x_distribution(table, n);
  std::vector<double> exact(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < dp.pmf.size(); ++i) exact[static_cast<std::size_t>(dp.support[i])] = dp.pmf[i];
  const auto empirical = empirical_pmf(x, n - 1);
  out.push_back(at_most("C04.total_variation", "oracle", n, reps, total_variation(empirical, exact), 0.01));
}

void sampler_equivalence(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t reps = 100000;
  const auto mu = CharacteristicMeasure::uniform();
  auto table = std::make_shared<const RateTable>(RateTable::build(mu, 200));
  int x_ok = 0, tau_ok = 0;
  for (const std::int64_t n : {10, 50, 200}) {
    const auto epochs = monte_carlo({SamplerKind::Epochs, mu, n, nullptr}, reps, seed, opt.workers);
    const auto chain = monte_carlo({SamplerKind::Chain, mu, n, table}, reps, seed, opt.workers);
    const auto px = ks_two_sample(column_X(epochs), column_X(chain)).p_value;
    const auto pt = ks_two_sample(column_tau(epochs), column_tau(chain)).p_value;
    x_ok += px >= 0.01;
    tau_ok += pt >= 0.01;
    out.push_back(at_least("C05.X.p_value." + n_label(n), "simulate", n, reps, px, 0.01, false));
    out.push_back(at_least("C05.tau.p_value." + n_label(n), "simulate", n, reps, pt, 0.01, false));
  }
  out.push_back(at_least("C05.X.states_not_rejected", "simulate", 200, reps, x_ok, 2));
  out.push_back(at_least("C05.tau.states_not_rejected", "simulate", 200, reps, tau_ok, 2));
}

void coupling_bounds(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t n = 1000, reps = 10000;
  const std::pair<const char*, CharacteristicMeasure> fixtures[] = {
      {"uniform", CharacteristicMeasure::uniform()},
      {"beta21", CharacteristicMeasure::beta(2, 1)},
      {"logpareto0.5", CharacteristicMeasure::log_pareto(0.5)},
  };
  std::uint32_t tag = 0xC0u;
  for (const auto& [name, mu] : fixtures) {
    std::atomic<std::int64_t> bounds{0}, times{0}, domination{0}, composition{0};
    parallel_for(reps, opt.workers, [&, &mu = mu](std::int64_t i) {
      RandomStream rng(seed, static_cast<std::uint64_t>(i), tag);
      const auto s = simulate_coupled(mu, n, rng, true);
      if (!(s.jumps - s.unit_jumps <= s.collisions &&
            s.collisions <= s.jumps + s.idle_epochs + s.collisions_after)) {
        ++bounds;
      }
      if (!(s.sigma <= s.absorption_time && s.survivors >= 1)) ++times;
      if (std::any_of(s.trace->begin(), s.trace->end(),
                      [](const EpochRecord& e) { return e.coalescent < e.primary; })) {
        ++domination;
      }
      const auto total = std::accumulate(s.composition.begin(), s.composition.end(), std::int64_t{0});
      const auto units = std::count(s.composition.begin(), s.composition.end(), std::int64_t{1});
      if (total != n || static_cast<std::int64_t>(s.composition.size()) != s.jumps ||
          units != s.unit_jumps ||
          std::any_of(s.composition.begin(), s.composition.end(), [](auto p) { return p < 1; })) {
        ++composition;
      }
    });
    ++tag;
    const std::string suffix = std::string(".") + name;
    out.push_back(at_most("C06.collision_bounds" + suffix, "coupling", n, reps, bounds.load(), 0));
    out.push_back(at_most("C06.sigma_le_tau" + suffix, "coupling", n, reps, times.load(), 0));
    out.push_back(at_most("C06.domination" + suffix, "coupling", n, reps, domination.load(), 0));
    out.push_back(at_most("C06.composition" + suffix, "coupling", n, reps, composition.load(), 0));
  }
}

void regime_one_normality(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t reps = 10000;
  const auto mu = CharacteristicMeasure::uniform();
  const auto spec = classify(mu);
  std::vector<double> distances;
  for (const std::int64_t n : {std::int64_t{10000}, std::int64_t{1000000}, std::int64_t{100000000}}) {
    auto x = sample_x(mu, n, reps, seed, opt.workers);
    const auto nc = norm_constants(spec, std::log(static_cast<double>(n)));
    for (auto& v : x) v = (v - nc.b) / nc.a;
    const double d = ks_distance(x, normal_cdf);
    distances.push_back(d);
    if (n == 100000000) {
      out.push_back(at_most("C07.ks." + n_label(n), "regime-1", n, reps, d, 0.10));
    } else {
      out.push_back(report("C07.ks." + n_label(n), "regime-1", n, reps, d));
    }
  }
  const double rise = std::max(distances[1] - distances[0], distances[2] - distances[1]);
  out.push_back(at_most("C07.ks_non_increasing", "regime-1", 100000000, reps, rise, 0.0));
}

void absorption_variance(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t n = 100000000, reps = 10000;
  const auto rows = monte_carlo({SamplerKind::Epochs, CharacteristicMeasure::uniform(), n, nullptr},
                                reps, seed, opt.workers);
  const auto ms = mean_and_se(column_tau(rows));
  out.push_back(within("C08.var_tau_over_log_n", "regime-1-tau", n, reps,
                       ms.variance / std::log(static_cast<double>(n)), 1.6, 2.4));
}

void mittag_leffler_moments(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t reps = 10000;
  const auto mu = CharacteristicMeasure::log_pareto(0.5);
  const auto spec = classify(mu);
  const MittagLefflerRef ref{spec.alpha};
  std::vector<double> first;
  for (const std::int64_t n : {std::int64_t{10000}, std::int64_t{100000000}}) {
    auto x = sample_x(mu, n, reps, seed, opt.workers);
    const double a = norm_constants(spec, std::log(static_cast<double>(n))).a;
    for (auto& v : x) v /= a;
    const auto err = moment_errors(x, ref, 4);
    first.push_back(err[0]);
    for (int k = 1; k <= 4; ++k) {
      const std::string id = "C09.moment" + std::to_string(k) + "." + n_label(n);
      const double e = err[static_cast<std::size_t>(k - 1)];
      if (n == 100000000 && k <= 2) {
        out.push_back(at_most(id, "regime-5", n, reps, e, 0.15));
      } else {
        out.push_back(report(id, "regime-5", n, reps, e));
      }
    }
  }
  out.push_back(at_most("C09.moment1_non_increasing", "regime-5", 100000000, reps,
                        first[1] - first[0], 0.0));
}

void stable_regime(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t reps = 10000;
  const auto mu = CharacteristicMeasure::log_pareto(1.5);
  const auto spec = classify(mu);
  const auto grid = default_cf_grid();
  const auto cf = [&](double t) { return stable_cf(spec.alpha, t); };
  std::vector<double> d;
  for (const std::int64_t n : {std::int64_t{10000}, std::int64_t{100000000}}) {
    auto x = sample_x(mu, n, reps, seed, opt.workers);
    const auto nc = norm_constants(spec, std::log(static_cast<double>(n)));
    for (auto& v : x) v = (v - nc.b) / nc.a;
    d.push_back(cf_distance(x, cf, grid));
    if (n == 100000000) {
      out.push_back(at_most("C10.cf_distance." + n_label(n), "regime-3", n, reps, d.back(), 0.15));
    } else {
      out.push_back(report("C10.cf_distance." + n_label(n), "regime-3", n, reps, d.back()));
    }
  }
  out.push_back(at_most("C10.cf_non_increasing", "regime-3", 100000000, reps, d[1] - d[0], 0.0));
}

void external_branch(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  constexpr std::int64_t n = 1000000, reps = 10000;
  const auto mu = CharacteristicMeasure::uniform();
  const auto rows = monte_carlo({SamplerKind::Tagged, mu, n, nullptr}, reps, seed, opt.workers);
  std::vector<double> z, g;
  for (const auto& r : rows) {
    z.push_back(*r.Z);
    g.push_back(static_cast<double>(*r.G));
  }
  const double p = mean_x(mu);
  const double ks = ks_distance(z, [p](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-p * t); });
  auto empirical = empirical_pmf(g, 30);
  std::vector<double> geometric(31, 0.0);
  for (int j = 1; j <= 30; ++j) geometric[static_cast<std::size_t>(j)] = p * std::pow(1.0 - p, j - 1);
  empirical[0] = 0.0;
  out.push_back(at_most("C11.ks_exponential", "external-branch", n, reps, ks, 0.05));
  out.push_back(at_most("C11.tv_geometric", "external-branch", n, reps,
                        total_variation(empirical, geometric), 0.05));
}

void determinism(const VerifyOptions& opt, std::uint64_t seed, Claims& out);

struct Criterion {
  const char* id;
  void (*run)(const VerifyOptions&, std::uint64_t, Claims&);
};

constexpr Criterion kCriteria[] = {
    {"C01", rate_identities},      {"C02", uniform_jump_law},
    {"C03", oracle_equivalence},   {"C04", monte_carlo_vs_oracle},
    {"C05", sampler_equivalence},  {"C06", coupling_bounds},
    {"C07", regime_one_normality}, {"C08", absorption_variance},
    {"C09", mittag_leffler_moments}, {"C10", stable_regime},
    {"C11", external_branch},      {"C12", determinism},
};

std::uint64_t criterion_seed(std::uint64_t seed, std::size_t index) {
  return mix64(seed ^ (0xA5A5A5A5ULL * (index + 1)));
}

void determinism(const VerifyOptions& opt, std::uint64_t seed, Claims& out) {
  std::int64_t mismatches = 0;
  // The documented example: uniform, n = 2, 1000 replicates, seed 7.
  const SamplerJob job{SamplerKind::Epochs, CharacteristicMeasure::uniform(), 2, nullptr};
  std::ostringstream one, many;
  write_csv(one, monte_carlo(job, 1000, 7, 1));
  write_csv(many, monte_carlo(job, 1000, 7, 8));
  mismatches += one.str() != many.str();

  // Sub-runs of the suite itself under different worker counts.
  for (const char* id : {"C04", "C06", "C11"}) {
    VerifyOptions a{opt.seed, 1, {id}}, b{opt.seed, std::max(2, opt.workers) + 2, {id}};
    mismatches += to_json(run_verification(a)) != to_json(run_verification(b));
  }
  (void)seed;
  out.push_back(at_most("C12.byte_mismatches", "determinism", 0, 4, static_cast<double>(mismatches), 0));
}

}  // namespace

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (const auto& c : kCriteria) ids.emplace_back(c.id);
  return ids;
}

VerificationReport run_verification(const VerifyOptions& options) {
  for (const auto& id : options.criteria) {
    if (std::none_of(std::begin(kCriteria), std::end(kCriteria),
                     [&](const Criterion& c) { return id == c.id; })) {
      throw ConfigError("unknown criterion '" + id + "'");
    }
  }
  VerificationReport rep;
  for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
    const auto& c = kCriteria[i];
    if (!options.criteria.empty() &&
        std::find(options.criteria.begin(), options.criteria.end(), c.id) == options.criteria.end()) {
      continue;
    }
    c.run(options, criterion_seed(options.seed, i), rep.claims);
  }
  rep.pass = std::all_of(rep.claims.begin(), rep.claims.end(),
                         [](const ClaimResult& r) { return !r.binding || r.pass; });
  return rep;
}

std::string to_json(const VerificationReport& report) {
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  for (const auto& c : report.claims) {
    nlohmann::ordered_json threshold;
    const char* comparison = "report";
    switch (c.comparison) {
      case Comparison::AtMost: threshold = c.upper; comparison = "<="; break;
      case Comparison::AtLeast: threshold = c.lower; comparison = ">="; break;
      case Comparison::Within: threshold = {c.lower, c.upper}; comparison = "within"; break;
      case Comparison::Report: break;
    }
    claims.push_back({{"claim_id", c.claim_id},
                      {"regime", c.regime},
                      {"n", c.n},
                      {"replicates", c.replicates},
                      {"statistic", c.statistic},
                      {"threshold", threshold},
                      {"comparison", comparison},
                      {"binding", c.binding},
                      {"pass", c.pass}});
  }
  nlohmann::ordered_json doc = {{"pass", report.pass}, {"claims", claims}};
  return doc.dump(2) + "\n";
}

void write_json(std::ostream& out, const VerificationReport& report) { out << to_json(report); }

}  // namespace lcoal
