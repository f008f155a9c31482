#pragma once

#include <stdexcept>
#include <string>

namespace ldo {

enum class ErrorKind {
  // input validation (CLI exit code 2)
  Config,
  NotMonic,
  Reducible,
  UnitVerificationFailed,
  WrongUnitRank,
  DivisionByZero,
  NoUnits,
  MissingCmStructure,
  TooLarge,
  Singular,
  HypothesisViolated,
  MembershipFails,
  DependentFactors,
  ArityMismatch,
  SingularCoefficientMatrix,
  HypothesisFails,
  CapExceeded,
  NotCm,
  CoefficientsNotInF,
  WrongPlaceCount,
  ToleranceAmbiguous,
  // numerical limits, reported rather than guessed (exit code 2)
  PrecisionExhausted,
  Inconclusive,
  SearchExhausted,
  // invariant violations (exit code 3): these indicate a bug
  MinimalNotBorel,
  BoundViolated,
  InvariantViolation,
};

const char* error_kind_name(ErrorKind k);
bool is_invariant_violation(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ldo
