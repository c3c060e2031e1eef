#include "cholex/error.h"

namespace cholex {

std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::RuleMismatch: return "RuleMismatch";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::ClassicalAxiomInCHOL: return "ClassicalAxiomInCHOL";
    case ErrorCode::IllFormedProof: return "IllFormedProof";
    case ErrorCode::EigenvariableCapture: return "EigenvariableCapture";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::NonCanonicalNormalForm: return "NonCanonicalNormalForm";
    case ErrorCode::WitnessNotNumeric: return "WitnessNotNumeric";
    case ErrorCode::NotEvaluable: return "NotEvaluable";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::EpsilonNotConstructive: return "EpsilonNotConstructive";
    case ErrorCode::NotExtractable: return "NotExtractable";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::IllTyped: return "IllTyped";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ResolutionError: return "ResolutionError";
    case ErrorCode::IoError: return "IoError";
  }
  return "?";
}

static std::string render(ErrorCode code, const std::string& msg, const std::string& path) {
  std::string s(error_name(code));
  if (!path.empty()) s += " at " + path;
  s += ": " + msg;
  return s;
}

Error::Error(ErrorCode code, const std::string& message, std::string path)
    : std::runtime_error(render(code, message, path)),
      code_(code),
      message_(message),
      path_(std::move(path)) {}

Error Error::with_prefix(const std::string& step) const {
  return Error(code_, message_, path_.empty() ? step : step + "." + path_);
}

}  // namespace cholex
