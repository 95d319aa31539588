#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace robinlab {

/// Base of every error raised by the library. Each category maps to one CLI
/// exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

/// Invalid parameters or grid/spec pairing.
class ConfigurationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// A mathematical precondition of an operation is violated (e.g. a threshold
/// above the band ceiling, or a hypothesis of an asymptotic formula).
class DomainError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Grid refinement budget exhausted before the requested tolerance was met.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double achieved_tol)
      : Error(what), best_estimate_(best_estimate), achieved_tol_(achieved_tol) {}

  int exit_code() const noexcept override { return 3; }
  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_tol() const noexcept { return achieved_tol_; }

 private:
  double best_estimate_;
  double achieved_tol_;
};

/// A minimization or root bracket could not be established. Carries the
/// scanned (x, f(x)) profile.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::vector<std::pair<double, double>> profile = {})
      : Error(what), profile_(std::move(profile)) {}

  int exit_code() const noexcept override { return 3; }
  const std::vector<std::pair<double, double>>& profile() const noexcept { return profile_; }

 private:
  std::vector<std::pair<double, double>> profile_;
};

/// Hard limits (band cutoffs, mode windows) exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Table or report I/O failure.
class PersistenceError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace robinlab
