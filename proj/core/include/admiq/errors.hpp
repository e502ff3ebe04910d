#pragma once

#include <stdexcept>
#include <string>

namespace admiq {

// Machine-checkable failure categories. Tests match on the code, the CLI maps
// codes to exit codes, and the message is for humans.
enum class ErrorCode {
  // instance / input validation
  IntervalInverted,
  UnknownVertex,
  DuplicateElement,
  FamilyShapeMismatch,
  AlreadyMin,
  UnknownElement,
  InvalidRealization,
  Disconnected,
  SameVertex,
  NotATree,
  EdgeNotInTree,
  SameEndpoints,
  EmptyFormula,
  ParseError,
  // resource caps on exact backends (hard errors, never silently degraded)
  TooLarge,
  TooManyFreeIntervals,
  TooManySolutions,
  // solver-level conditions
  NoFeasibleSet,
  NotIndependentSingleton,
  ConstraintInfeasible,
  // query plan execution
  MissingThreshold,
  RevealOutOfInterval,
  RevealMissing,
  RevealUnexpected,
  // internal cross-check failure (a bug, not a user error)
  OracleFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string element = {});

  ErrorCode code() const { return code_; }
  // Offending element id when the failure is tied to one element, else empty.
  const std::string& element() const { return element_; }

 private:
  ErrorCode code_;
  std::string element_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message,
                       std::string element = {});

}  // namespace admiq
