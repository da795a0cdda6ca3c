#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ckm/diagnostics.hpp"

namespace ckm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A named class, package, or metric does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Caller passed arguments that violate an operation's preconditions.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The model cannot be analyzed (e.g. an inheritance cycle).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// A model document could not be parsed.
class ModelParseError : public Error {
 public:
  using Error::Error;
};

/// A model violates its structural invariants.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::vector<Diagnostic> diagnostics)
      : Error(message), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// A GenSpec cannot be satisfied.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// User-supplied configuration (rules file, flags) is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ckm
