#include "ldo/errors.hpp"

namespace ldo {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::UnitVerificationFailed: return "UnitVerificationFailed";
    case ErrorKind::WrongUnitRank: return "WrongUnitRank";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NoUnits: return "NoUnits";
    case ErrorKind::MissingCmStructure: return "MissingCmStructure";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::MembershipFails: return "MembershipFails";
    case ErrorKind::DependentFactors: return "DependentFactors";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SingularCoefficientMatrix: return "SingularCoefficientMatrix";
    case ErrorKind::HypothesisFails: return "HypothesisFails";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotCm: return "NotCm";
    case ErrorKind::CoefficientsNotInF: return "CoefficientsNotInF";
    case ErrorKind::WrongPlaceCount: return "WrongPlaceCount";
    case ErrorKind::ToleranceAmbiguous: return "ToleranceAmbiguous";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::MinimalNotBorel: return "MinimalNotBorel";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Error";
}

bool is_invariant_violation(ErrorKind k) {
  return k == ErrorKind::MinimalNotBorel || k == ErrorKind::BoundViolated ||
         k == ErrorKind::InvariantViolation;
}

}  // namespace ldo
