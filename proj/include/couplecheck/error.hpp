#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace couplecheck {

enum class ErrorCode {
  // system-core validation
  MassNotNormalized,
  NegativeMass,
  ArityMismatch,
  UnknownContent,
  UnknownContext,
  DuplicateContent,
  DuplicateContext,
  EmptyContext,
  RepeatedContent,
  OrphanContent,
  MissingSupport,
  DuplicateSupport,
  DuplicateValue,
  ValueNotInSupport,
  MissingBunch,
  DuplicateBunch,
  DuplicateTuple,
  ContentNotInContext,
  // lp-feasibility
  DimensionMismatch,
  // coupling-engine
  DistributionsDiffer,
  NotABijection,
  UnknownConnection,
  ConnectionArityUnsupported,
  InvalidTarget,
  // contextuality-analysis
  NonBinarySupport,
  RequiresMarginalSelectivity,
  StructuralMismatch,
  // scenarios
  UnknownScenario,
  BadParameter,
  // system file
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// One validation failure. `line` is 0 when the input did not come from a file.
struct Violation {
  ErrorCode code;
  std::string message;
  std::string section;
  int line = 0;

  std::string describe() const;
};

/// Thrown by validate_system; carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace couplecheck
