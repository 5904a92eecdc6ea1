#pragma once

#include <stdexcept>
#include <string>

namespace volterra {

// Base for every library failure that a caller may want to tell apart from
// plain std::invalid_argument (malformed input).
class VolterraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A truncated infinite sum could not be certified within the term cap.
class TailNotCertified : public VolterraError {
 public:
  using VolterraError::VolterraError;
};

// a_{n+T,i+T} != a_{n,i} for the requested period.
class NotDiagonalPeriodic : public VolterraError {
 public:
  using VolterraError::VolterraError;
};

// Full-period product of (1 + c_l) is 1 within tolerance; alpha is undefined.
class PeriodProductIsOne : public VolterraError {
 public:
  using VolterraError::VolterraError;
};

// Full-period product of (1 + c_l) differs from 1; phi/psi are not periodic.
class PeriodProductNotOne : public VolterraError {
 public:
  using VolterraError::VolterraError;
};

// Some 1 + c_n vanishes, so a reciprocal running product does not exist.
class ZeroFactor : public VolterraError {
 public:
  using VolterraError::VolterraError;
};

// Configuration document failed validation. `path` names the offending field
// in JSON-pointer-like dotted form, e.g. "kernel_a.row_rate".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace volterra
