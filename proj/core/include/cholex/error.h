#ifndef CHOLEX_ERROR_H
#define CHOLEX_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace cholex {

enum class ErrorCode {
  // hol kernel
  TypeMismatch,
  ArityMismatch,
  RuleMismatch,
  SideConditionViolated,
  ClassicalAxiomInCHOL,
  // izf
  IllFormedProof,
  EigenvariableCapture,
  // engine
  FuelExhausted,
  NonCanonicalNormalForm,
  WitnessNotNumeric,
  NotEvaluable,
  // semantics / extraction
  UnboundVariable,
  EpsilonNotConstructive,
  NotExtractable,
  DomainMismatch,
  IllTyped,
  // front end
  SyntaxError,
  ResolutionError,
  IoError,
};

std::string_view error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {});

  ErrorCode code() const { return code_; }
  // Location inside the offending tree, e.g. "2.0.1"; empty at the root.
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

  Error with_prefix(const std::string& step) const;

 private:
  ErrorCode code_;
  std::string message_;
  std::string path_;
};

}  // namespace cholex

#endif
