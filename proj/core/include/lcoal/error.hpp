#pragma once

#include <stdexcept>
#include <string>

namespace lcoal {

// Invalid parameters, malformed specification strings or files, unsupported
// combinations. The command-line front end maps these to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature or root-finding that did not reach its tolerance. Maps to exit
// status 3. `what()` carries the diagnostics (interval, estimate, error).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcoal
