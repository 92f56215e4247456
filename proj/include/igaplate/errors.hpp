#pragma once

#include <stdexcept>
#include <string>

namespace igaplate {

// Malformed user input: config files, CLI values, inconsistent case setups.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: degenerate geometry, factorization breakdown, a solver
// that did not reach its tolerance.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace igaplate
