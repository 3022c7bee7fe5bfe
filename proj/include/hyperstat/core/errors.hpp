#pragma once

#include <stdexcept>
#include <string>

namespace hyperstat {

/// Invalid user input: malformed grids, unknown names, bad configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A solver could not produce a trustworthy result (CFL, NaN, out-of-domain).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CflViolation : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace hyperstat
