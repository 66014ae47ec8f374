#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lcoal::cli {

enum class Subcommand { Rates, Exact, Simulate, Coupled, Tagged, Verify };
enum class Format { Csv, Json };

struct RunConfig {
  Subcommand subcommand = Subcommand::Simulate;
  std::string measure = "uniform";
  std::vector<std::int64_t> n{2};
  std::int64_t replicates = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  Format format = Format::Csv;
  std::string output;  // empty: standard output

  std::string engine = "auto";       // simulate: auto | epochs | chain
  std::string exact_method = "dp";   // exact: dp | indicator
  std::string rate_method = "auto";  // rates: auto | closed | quadrature | qmc
  std::int64_t n_max = 10000;        // cap for rate tables
  std::vector<std::string> claims;   // verify: criterion ids
};

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kNumericError = 3 };

/// Executes a parsed configuration, writing the table or report to `out`.
/// Library exceptions propagate; see main_entry for the exit-code mapping.
int run(const RunConfig& config, std::ostream& out);

/// Parses arguments (argv[0] is the program name), applies the LCOAL_OUTPUT
/// and LCOAL_WORKERS overrides (flags win), runs, and maps failures to exit
/// codes with a one-line diagnostic on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcoal::cli
