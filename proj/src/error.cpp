#include "scheme_forge/error.hpp"

namespace scheme_forge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ConductorMismatch: return "ConductorMismatch";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PartitionInvalid: return "PartitionInvalid";
    case ErrorCode::NotAScheme: return "NotAScheme";
    case ErrorCode::SingularP: return "SingularP";
    case ErrorCode::MalformedPartition: return "MalformedPartition";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::BadDiscriminant: return "BadDiscriminant";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OrientationAmbiguous: return "OrientationAmbiguous";
    case ErrorCode::NoOrbitMemberVerifies: return "NoOrbitMemberVerifies";
    case ErrorCode::TemplatePreconditionViolated: return "TemplatePreconditionViolated";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace scheme_forge
