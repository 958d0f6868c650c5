#include "couplecheck/error.hpp"

namespace couplecheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MassNotNormalized: return "MassNotNormalized";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownContent: return "UnknownContent";
    case ErrorCode::UnknownContext: return "UnknownContext";
    case ErrorCode::DuplicateContent: return "DuplicateContent";
    case ErrorCode::DuplicateContext: return "DuplicateContext";
    case ErrorCode::EmptyContext: return "EmptyContext";
    case ErrorCode::RepeatedContent: return "RepeatedContent";
    case ErrorCode::OrphanContent: return "OrphanContent";
    case ErrorCode::MissingSupport: return "MissingSupport";
    case ErrorCode::DuplicateSupport: return "DuplicateSupport";
    case ErrorCode::DuplicateValue: return "DuplicateValue";
    case ErrorCode::ValueNotInSupport: return "ValueNotInSupport";
    case ErrorCode::MissingBunch: return "MissingBunch";
    case ErrorCode::DuplicateBunch: return "DuplicateBunch";
    case ErrorCode::DuplicateTuple: return "DuplicateTuple";
    case ErrorCode::ContentNotInContext: return "ContentNotInContext";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DistributionsDiffer: return "DistributionsDiffer";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::UnknownConnection: return "UnknownConnection";
    case ErrorCode::ConnectionArityUnsupported: return "ConnectionArityUnsupported";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::NonBinarySupport: return "NonBinarySupport";
    case ErrorCode::RequiresMarginalSelectivity: return "RequiresMarginalSelectivity";
    case ErrorCode::StructuralMismatch: return "StructuralMismatch";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string Violation::describe() const {
  std::string out(to_string(code));
  if (!section.empty() || line > 0) {
    out += " [";
    out += section;
    if (line > 0) out += (section.empty() ? "line " : ", line ") + std::to_string(line);
    out += "]";
  }
  out += ": " + message;
  return out;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) out += "\n  " + v.describe();
  return out;
}

ErrorCode first_code(const std::vector<Violation>& violations) {
  return violations.empty() ? ErrorCode::ParseError : violations.front().code;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(first_code(violations), summarize(violations)), violations_(std::move(violations)) {}

}  // namespace couplecheck
