#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcoal {

enum class Comparison { AtMost, AtLeast, Within, Report };

struct ClaimResult {
  std::string claim_id;  // "C07.ks.n1e8"
  std::string regime;    // regime or area under test
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  double statistic = 0.0;
  Comparison comparison = Comparison::Report;
  double lower = 0.0;  // Within and AtLeast
  double upper = 0.0;  // Within and AtMost
  bool binding = true;  // non-binding records are reported but never fail the run
  bool pass = true;
};

struct VerificationReport {
  std::vector<ClaimResult> claims;
  bool pass = true;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<std::string> criteria;  // "C01".."C12"; empty selects all
};

/// Identifiers of the acceptance criteria, in order.
std::vector<std::string> criterion_ids();

/// Runs the selected criteria. Every fixture is built in memory.
VerificationReport run_verification(const VerifyOptions& options);

/// {"pass": bool, "claims": [{claim_id, regime, n, replicates, statistic,
/// threshold, comparison, binding, pass}, ...]}. No timings, so equal inputs give
/// equal bytes.
void write_json(std::ostream& out, const VerificationReport& report);
std::string to_json(const VerificationReport& report);

}  // namespace lcoal
