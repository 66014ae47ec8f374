#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lcoal/error.hpp"
#include "lcoal/measure.hpp"
#include "lcoal/monte_carlo.hpp"
#include "lcoal/oracle.hpp"
#include "lcoal/rates.hpp"
#include "lcoal/verify.hpp"

namespace lcoal::cli {

namespace {

constexpr std::int64_t kEpochOnlyAbove = 10000;

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Accepts plain integers and integral scientific notation such as 1e8.
std::int64_t parse_count(const std::string& text) {
  std::size_t used = 0;
  try {
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
    const double d = std::stod(text, &used);
    if (used == text.size() && d == std::floor(d) && std::abs(d) <= 9.007199254740992e15) {
      return static_cast<std::int64_t>(d);
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("not an integer: '" + text + "'");
}

std::uint64_t parse_seed(const std::string& text, std::ostream& err) {
  if (text == "random") {
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "lcoal: seed=" << seed << '\n';
    return seed;
  }
  std::size_t used = 0;
  try {
    if (!text.empty() && text[0] != '-') {
      const unsigned long long v = std::stoull(text, &used, 0);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("seed must be a non-negative 64-bit integer or 'random', got '" + text + "'");
}

std::int64_t single_n(const RunConfig& c, const char* who) {
  if (c.n.size() != 1) throw ConfigError(std::string(who) + " takes a single --n");
  return c.n.front();
}

RateMethod rate_method(const std::string& name) {
  if (name == "auto") return RateMethod::Auto;
  if (name == "closed") return RateMethod::ClosedForm;
  if (name == "quadrature") return RateMethod::Quadrature;
  if (name == "qmc") return RateMethod::QuasiMonteCarlo;
  throw ConfigError("unknown rate method '" + name + "'");
}

int run_rates(const RunConfig& c, std::ostream& out) {
  const auto mu = CharacteristicMeasure::parse(c.measure);
  const std::int64_t n = single_n(c, "rates");
  if (n < 2) throw ConfigError("rates needs n >= 2");
  if (n > c.n_max) throw ConfigError("n exceeds the rate-table cap --n-max");
  const auto table = RateTable::build(mu, n, rate_method(c.rate_method));
  if (c.format == Format::Json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array(), totals = rows;
    for (std::int64_t s = 2; s <= n; ++s) {
      for (std::int64_t m = 1; m < s; ++m) {
        rows.push_back({{"n", s}, {"m", m}, {"g_nm", table.g(s, m)}, {"p_nm", table.jump_probability(s, m)}});
      }
      totals.push_back({{"n", s}, {"g_n", table.g_total(s)}});
    }
    out << nlohmann::ordered_json{{"measure", mu.spec()}, {"rates", rows}, {"totals", totals}}.dump(2)
        << '\n';
    return kOk;
  }
  out << "n,m,g_nm,p_nm\n";
  for (std::int64_t s = 2; s <= n; ++s) {
    for (std::int64_t m = 1; m < s; ++m) {
      out << s << ',' << m << ',' << real(table.g(s, m)) << ',' << real(table.jump_probability(s, m))
          << '\n';
    }
  }
  out << "\nn,g_n\n";
  for (std::int64_t s = 2; s <= n; ++s) out << s << ',' << real(table.g_total(s)) << '\n';
  return kOk;
}

int run_exact(const RunConfig& c, std::ostream& out) {
  const auto mu = CharacteristicMeasure::parse(c.measure);
  const std::int64_t n = single_n(c, "exact");
  if (n < 2 || n > kExactMaxStates) {
    throw ConfigError("exact needs 2 <= n <= " + std::to_string(kExactMaxStates));
  }
  ExactDistribution d;
  std::optional<double> expected_time;
  if (c.exact_method == "dp") {
    const auto table = RateTable::build(mu, n);
    d = exact_x_distribution(table, n);
    expected_time = exact_expected_times(table, n)[static_cast<std::size_t>(n)];
  } else if (c.exact_method == "indicator") {
    if (!mu.has_beta_form() || mu.theta() != 1.0) {
      throw ConfigError("the indicator method applies to beta:1,<b> only");
    }
    d = indicator_distribution(mu.b(), n);
  } else {
    throw ConfigError("unknown exact method '" + c.exact_method + "'");
  }
  if (c.format == Format::Json) {
    nlohmann::ordered_json doc = {{"measure", mu.spec()},  {"n", n},
                                  {"method", c.exact_method}, {"support", d.support},
                                  {"pmf", d.pmf},          {"mean", d.mean},
                                  {"var", d.variance}};
    doc["E_tau"] = expected_time ? nlohmann::ordered_json(*expected_time) : nlohmann::ordered_json();
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "j,probability\n";
  for (std::size_t i = 0; i < d.pmf.size(); ++i) out << d.support[i] << ',' << real(d.pmf[i]) << '\n';
  out << "# mean=" << real(d.mean) << ", var=" << real(d.variance);
  if (expected_time) out << ", E_tau=" << real(*expected_time);
  out << '\n';
  return kOk;
}

int run_sampler(const RunConfig& c, std::ostream& out) {
  const auto mu = CharacteristicMeasure::parse(c.measure);
  if (c.replicates < 1) throw ConfigError("replicates must be >= 1");
  SamplerKind kind = SamplerKind::Epochs;
  std::int64_t min_n = 1;
  switch (c.subcommand) {
    case Subcommand::Coupled: kind = SamplerKind::Coupled; min_n = 2; break;
    case Subcommand::Tagged: kind = SamplerKind::Tagged; min_n = 2; break;
    default:
      if (c.engine == "chain") {
        kind = SamplerKind::Chain;
      } else if (c.engine != "auto" && c.engine != "epochs") {
        throw ConfigError("unknown engine '" + c.engine + "'");
      }
  }
  std::int64_t largest = 0;
  for (const auto n : c.n) {
    if (n < min_n) throw ConfigError("n must be >= " + std::to_string(min_n));
    largest = std::max(largest, n);
  }
  std::shared_ptr<const RateTable> table;
  if (kind == SamplerKind::Chain) {
    if (largest > c.n_max) {
      throw ConfigError("chain engine needs n <= --n-max (" + std::to_string(c.n_max) +
                        "); use the epoch engine above " + std::to_string(kEpochOnlyAbove));
    }
    table = std::make_shared<const RateTable>(RateTable::build(mu, std::max<std::int64_t>(largest, 2)));
  }
  std::vector<SampleRow> rows;
  for (const auto n : c.n) {
    const auto part = monte_carlo({kind, mu, n, table}, c.replicates, c.seed, c.workers);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (c.format == Format::Json) {
    write_json(out, rows);
  } else {
    write_csv(out, rows);
  }
  return kOk;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const auto report = run_verification({c.seed, c.workers, c.claims});
  write_json(out, report);
  return report.pass ? kOk : kVerificationFailed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  if (config.workers < 1) throw ConfigError("workers must be >= 1");
  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.output.empty() && config.output != "-") {
    file.open(config.output, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + config.output + "'");
    sink = &file;
  }
  switch (config.subcommand) {
    case Subcommand::Rates: return run_rates(config, *sink);
    case Subcommand::Exact: return run_exact(config, *sink);
    case Subcommand::Verify: return run_verify(config, *sink);
    default: return run_sampler(config, *sink);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lambda-coalescent rates, exact oracles, samplers and limit-law verification", "lcoal"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> n_text;
  std::string seed_text = "0";
  std::string format_text = "csv";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_text, "64-bit seed, or 'random'")->capture_default_str();
    sub->add_option("--workers", config.workers, "worker threads")
        ->envname("LCOAL_WORKERS")
        ->capture_default_str();
    sub->add_option("--output,-o", config.output, "output path (default: standard output)")
        ->envname("LCOAL_OUTPUT");
  };
  const auto measured = [&](CLI::App* sub) {
    sub->add_option("--measure,-m", config.measure,
                    "uniform | beta:<theta>,<b> | logpareto:<alpha> | loglogpareto | tabulated:<path>")
        ->capture_default_str();
    sub->add_option("--n", n_text, "initial particle count(s), comma separated")->delimiter(',');
    sub->add_option("--format", format_text, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--n-max", config.n_max, "cap on rate-table size")->capture_default_str();
    common(sub);
  };

  auto* rates = app.add_subcommand("rates", "death-chain rates g_{n,m}, jump law p_{n,m} and g_n");
  measured(rates);
  rates->add_option("--method", config.rate_method, "auto | closed | quadrature | qmc")
      ->check(CLI::IsMember({"auto", "closed", "quadrature", "qmc"}))
      ->capture_default_str();

  auto* exact = app.add_subcommand("exact", "exact law of X_n and E tau_n");
  measured(exact);
  exact->add_option("--method", config.exact_method, "dp | indicator")
      ->check(CLI::IsMember({"dp", "indicator"}))
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "samples of (X_n, tau_n)");
  measured(simulate);
  simulate->add_option("--replicates,-r", config.replicates)->capture_default_str();
  simulate->add_option("--engine", config.engine, "auto | epochs | chain")
      ->check(CLI::IsMember({"auto", "epochs", "chain"}))
      ->capture_default_str();

  auto* coupled = app.add_subcommand("coupled", "coupled coalescent and annihilator samples");
  measured(coupled);
  coupled->add_option("--replicates,-r", config.replicates)->capture_default_str();

  auto* tagged = app.add_subcommand("tagged", "external branch length Z_n and collisions before it");
  measured(tagged);
  tagged->add_option("--replicates,-r", config.replicates)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the acceptance suite; exit 0 iff every claim passes");
  verify->add_option("--claims", config.claims, "criterion ids such as C01,C07 (default: all)")
      ->delimiter(',');
  common(verify);

  try {
    app.parse(argc, argv);
    if (rates->parsed()) config.subcommand = Subcommand::Rates;
    if (exact->parsed()) config.subcommand = Subcommand::Exact;
    if (simulate->parsed()) config.subcommand = Subcommand::Simulate;
    if (coupled->parsed()) config.subcommand = Subcommand::Coupled;
    if (tagged->parsed()) config.subcommand = Subcommand::Tagged;
    if (verify->parsed()) config.subcommand = Subcommand::Verify;
    config.format = format_text == "json" ? Format::Json : Format::Csv;
    if (!n_text.empty()) {
      config.n.clear();
      for (const auto& t : n_text) config.n.push_back(parse_count(t));
    }
    config.seed = parse_seed(seed_text, err);
    return run(config, out);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "lcoal: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericError& e) {
    err << "lcoal: numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::invalid_argument& e) {
    err << "lcoal: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "lcoal: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "lcoal: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace lcoal::cli
