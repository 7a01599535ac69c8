#pragma once

#include <stdexcept>
#include <string>

namespace fermi {

/// Argument outside the domain where a model expression is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A momentum distribution produced a value a measure cannot accept (e.g. n < 0).
class DistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or malformed configuration, including absent energy coefficients.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file does not have the expected layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermi
