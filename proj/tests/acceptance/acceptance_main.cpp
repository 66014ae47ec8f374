// Acceptance driver: `lcoal_acceptance <criterion>` runs one criterion of the
// built-in suite, re-checks every binding statistic against the tolerances
// pinned below, and prints a single PASS/FAIL line. Exit status 0 iff it passed.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lcoal/verify.hpp"

namespace {

using lcoal::ClaimResult;

enum class Bound { AtMost, AtLeast, Within };

struct Pin {
  const char* claim;  // exact claim id, or a prefix ending in '.'
  Bound bound;
  double lo;
  double hi;
};

struct Criterion {
  const char* id;
  double seconds;  // runtime budget
  std::vector<Pin> pins;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"C01", 10, {{"C01.recursion.", Bound::AtMost, 0, 1e-10}, {"C01.row_sum.", Bound::AtMost, 0, 1e-10}}},
      {"C02", 1, {{"C02.uniform_jump", Bound::AtMost, 0, 1e-12}}},
      {"C03", 10, {{"C03.indicator.", Bound::AtMost, 0, 1e-10}}},
      {"C04", 30, {{"C04.mean_z", Bound::AtMost, 0, 3.0}, {"C04.total_variation", Bound::AtMost, 0, 0.01}}},
      {"C05", 120,
       {{"C05.X.states_not_rejected", Bound::AtLeast, 2, 0},
        {"C05.tau.states_not_rejected", Bound::AtLeast, 2, 0}}},
      {"C06", 120,
       {{"C06.collision_bounds.", Bound::AtMost, 0, 0}, {"C06.sigma_le_tau.", Bound::AtMost, 0, 0},
        {"C06.domination.", Bound::AtMost, 0, 0}, {"C06.composition.", Bound::AtMost, 0, 0}}},
      {"C07", 300, {{"C07.ks.n1e8", Bound::AtMost, 0, 0.10}, {"C07.ks_non_increasing", Bound::AtMost, 0, 0}}},
      {"C08", 300, {{"C08.var_tau_over_log_n", Bound::Within, 1.6, 2.4}}},
      {"C09", 300,
       {{"C09.moment1.n1e8", Bound::AtMost, 0, 0.15}, {"C09.moment2.n1e8", Bound::AtMost, 0, 0.15},
        {"C09.moment1_non_increasing", Bound::AtMost, 0, 0}}},
      {"C10", 300,
       {{"C10.cf_distance.n1e8", Bound::AtMost, 0, 0.15}, {"C10.cf_non_increasing", Bound::AtMost, 0, 0}}},
      {"C11", 120, {{"C11.ks_exponential", Bound::AtMost, 0, 0.05}, {"C11.tv_geometric", Bound::AtMost, 0, 0.05}}},
      {"C12", 60, {{"C12.byte_mismatches", Bound::AtMost, 0, 0}}},
  };
  return all;
}

bool matches(const Pin& pin, const std::string& claim) {
  const std::string key = pin.claim;
  return key.back() == '.' ? claim.rfind(key, 0) == 0 : claim == key;
}

bool holds(const Pin& pin, double x) {
  switch (pin.bound) {
    case Bound::AtMost: return x <= pin.hi;
    case Bound::AtLeast: return x >= pin.lo;
    case Bound::Within: return x >= pin.lo && x <= pin.hi;
  }
  return false;
}

std::string describe(const Pin& pin, const ClaimResult& c) {
  char buf[160];
  switch (pin.bound) {
    case Bound::AtMost: std::snprintf(buf, sizeof buf, "%s=%.4g<=%g", c.claim_id.c_str(), c.statistic, pin.hi); break;
    case Bound::AtLeast: std::snprintf(buf, sizeof buf, "%s=%.4g>=%g", c.claim_id.c_str(), c.statistic, pin.lo); break;
    case Bound::Within:
      std::snprintf(buf, sizeof buf, "%s=%.4g in [%g,%g]", c.claim_id.c_str(), c.statistic, pin.lo, pin.hi);
      break;
  }
  return buf;
}

// Var(tau_n) / log n for the uniform measure, exactly at finite n: from state n the
// embedded chain visits k < n with probability 1/k, independently over k, and holds
// there Exponential(g_k), g_k = (k-1)/(k+1).
double exact_uniform_tau_variance_ratio(std::int64_t n) {
  long double var = 0.0L;
  for (std::int64_t k = 2; k <= n; ++k) {
    const long double p = k == n ? 1.0L : 1.0L / k;
    const long double mean = (k + 1.0L) / (k - 1.0L);
    var += p * 2.0L * mean * mean - p * p * mean * mean;
  }
  return static_cast<double>(var / std::log(static_cast<long double>(n)));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: lcoal_acceptance <C01..C12>\n";
    return 2;
  }
  const std::string id = argv[1];
  const Criterion* crit = nullptr;
  for (const auto& c : criteria())
    if (id == c.id) crit = &c;
  if (!crit) {
    std::cerr << "unknown criterion " << id << "\n";
    return 2;
  }

  lcoal::VerifyOptions options;
  options.seed = 0;
  options.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  options.criteria = {id};

  const auto start = std::chrono::steady_clock::now();
  const auto report = lcoal::run_verification(options);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool pass = elapsed < crit->seconds;
  std::ostringstream detail;
  for (const auto& pin : crit->pins) {
    int seen = 0;
    for (const auto& c : report.claims) {
      if (!matches(pin, c.claim_id)) continue;
      ++seen;
      const bool ok = holds(pin, c.statistic);
      pass = pass && ok;
      detail << ' ' << describe(pin, c) << (ok ? "" : "(!)");
    }
    if (seen == 0) {
      pass = false;
      detail << ' ' << pin.claim << "=missing(!)";
    }
  }
  // The suite's own verdict must agree with the pinned re-check.
  if (report.pass != pass && elapsed < crit->seconds) detail << " verdict-mismatch(!)";
  pass = pass && report.pass;

  if (id == "C04") {
    // H_99 = digamma(100) + Euler's gamma, independent of the summed value used by the suite.
    const double h99 = boost::math::digamma(100.0) + boost::math::constants::euler<double>();
    const bool ok = std::abs(h99 - 5.17738) < 5e-6;
    pass = pass && ok;
    detail << " H_99=" << h99 << (ok ? "" : "(!)");
  }
  if (id == "C08") {
    detail << " exact_finite_n_ratio=" << exact_uniform_tau_variance_ratio(100000000)
           << " (limit 2 is approached only as O(1/log n))";
  }
  if (id == "C10") {
    for (const auto& c : report.claims)
      if (c.claim_id == "C10.cf_distance.n1e4") detail << " reference_n1e4=" << c.statistic;
  }

  std::printf("%s %s [%.1f s, budget %.0f s]%s\n", id.c_str(), pass ? "PASS" : "FAIL", elapsed,
              crit->seconds, detail.str().c_str());
  return pass ? 0 : 1;
}
