#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cure {

// Every failure carries a stable machine-readable category so the CLI can
// report it without string-matching messages.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

class NotPositiveDefiniteError : public Error {
 public:
  explicit NotPositiveDefiniteError(const std::string& message)
      : Error("not_positive_definite", message) {}
};

// Iterative scheme ran out of iterations; carries the residual it reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : Error("no_convergence", message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& message, long step)
      : Error("divergence", message), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error("dimension_mismatch", message) {}
};

// Dense-Hessian path refused because d exceeds the configured cap.
class CapExceededError : public Error {
 public:
  explicit CapExceededError(const std::string& message)
      : Error("hessian_cap_exceeded", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

// File-format failures keep their own fine-grained category
// (idx_bad_magic, idx_truncated, csv_ragged_row, checkpoint_version, ...).
class FormatError : public Error {
 public:
  FormatError(std::string category, const std::string& message)
      : Error(std::move(category), message) {}
};

}  // namespace cure
