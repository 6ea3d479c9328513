#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scheme_forge {

enum class ErrorCode {
  NotPrime,
  DegreeZero,
  FieldTooLarge,
  InvalidElement,
  ZeroElement,
  NotCoprime,
  ConductorMismatch,
  ArithmeticOverflow,
  NotADivisor,
  IndexOutOfRange,
  PartitionInvalid,
  NotAScheme,
  SingularP,
  MalformedPartition,
  TooLargeForOracle,
  EvenCharacteristic,
  BadDiscriminant,
  NoSolution,
  PreconditionViolated,
  OrientationAmbiguous,
  NoOrbitMemberVerifies,
  TemplatePreconditionViolated,
  ModulusMismatch,
  BudgetExceeded,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Resource caps, as opposed to mathematical or usage failures.
  bool is_resource_error() const noexcept {
    return code_ == ErrorCode::FieldTooLarge || code_ == ErrorCode::TooLargeForOracle ||
           code_ == ErrorCode::BudgetExceeded;
  }

 private:
  ErrorCode code_;
};

}  // namespace scheme_forge
