#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zetalab {

/// Coarse classification used by the CLI to pick an exit code:
/// usage -> 1, resource -> 2, check -> 3.
enum class ErrorCategory { usage, resource, check };

/// Base of all library errors. `name()` is the stable machine-readable
/// identifier; `what()` carries a human-readable diagnostic.
class Error : public std::runtime_error {
public:
  Error(std::string name, ErrorCategory category, const std::string& message)
      : std::runtime_error(name + ": " + message),
        name_(std::move(name)),
        category_(category) {}

  const std::string& name() const { return name_; }
  ErrorCategory category() const { return category_; }

private:
  std::string name_;
  ErrorCategory category_;
};

#define ZETALAB_ERROR(NAME, CATEGORY)                             \
  class NAME : public Error {                                     \
  public:                                                         \
    explicit NAME(const std::string& message)                     \
        : Error(#NAME, ErrorCategory::CATEGORY, message) {}       \
  }

// Input and precondition violations (exit 1).
ZETALAB_ERROR(CompositeModulus, usage);
ZETALAB_ERROR(EvenPrime, usage);
ZETALAB_ERROR(DivisionByZero, usage);
ZETALAB_ERROR(NotHomogeneous, usage);
ZETALAB_ERROR(NotSquarefree, usage);
ZETALAB_ERROR(NotOneModFour, usage);
ZETALAB_ERROR(HypothesisNotMet, usage);
ZETALAB_ERROR(NotCoprime, usage);
ZETALAB_ERROR(OutOfRange, usage);
ZETALAB_ERROR(ZeroCoefficient, usage);
ZETALAB_ERROR(InsufficientTerms, usage);
ZETALAB_ERROR(SmoothnessUnverified, usage);
ZETALAB_ERROR(MixedVariables, usage);
ZETALAB_ERROR(UsageError, usage);

// Policy and budget violations (exit 2).
ZETALAB_ERROR(SizeExceeded, resource);
ZETALAB_ERROR(DegreeExceeded, resource);

// Mathematical check failures (exit 3).
ZETALAB_ERROR(NonIntegralCoefficient, check);
ZETALAB_ERROR(InconsistentCounts, check);
ZETALAB_ERROR(ReconstructionFailed, check);
ZETALAB_ERROR(NoFunctionalEquation, check);
ZETALAB_ERROR(DegreeViolation, check);
ZETALAB_ERROR(BoundViolated, check);

#undef ZETALAB_ERROR

/// Parse failure with position information (1-based line and column).
class SyntaxError : public Error {
public:
  SyntaxError(int line, int column, const std::string& message)
      : Error("SyntaxError",
              ErrorCategory::usage,
              "line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace zetalab
