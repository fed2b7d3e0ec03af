#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace esos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite input where a finite value is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Nome outside the open unit disc.
class InvalidNome : public Error {
 public:
  using Error::Error;
};

/// A denominator fell below the relative near-zero threshold.
class NearPoleError : public Error {
 public:
  NearPoleError(std::string factor, double magnitude)
      : Error("near-pole: " + factor + " vanishes (|value| = " +
              std::to_string(magnitude) + ")"),
        factor_(std::move(factor)),
        magnitude_(magnitude) {}

  const std::string& factor() const noexcept { return factor_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::string factor_;
  double magnitude_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Every sample point of a theta-function test sat on a zero of f.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Parameter set failed validation; carries one message per violation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out = "invalid parameters:";
    for (const auto& s : issues) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> issues_;
};

}  // namespace esos
