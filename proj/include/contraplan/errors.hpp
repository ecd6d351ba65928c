#pragma once

#include <stdexcept>
#include <string>

namespace contraplan {

/// Non-finite numbers reached the dynamics.
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Metric inputs where every sample coincides with the nominal trajectory.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Bad configuration, scene file or CLI usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace contraplan
