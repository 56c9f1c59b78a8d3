#pragma once

#include <stdexcept>
#include <string>

namespace aot {

enum class ErrorCode {
  // configuration / request errors
  InvalidSpec,
  BadDimension,
  BadT,
  TooLarge,
  EpsilonNonPositive,
  WrongCostFamily,
  // data errors
  DimensionMismatch,
  DomainMismatch,
  ShapeMismatch,
  MassMismatch,
  EmptyMeasure,
  PositivityViolation,
  MassNotNormalizable,
  BadMagic,
  BadVersion,
  IoFailure,
  // numerical failures
  NonFinite,
  SingularGram,
  DegeneratePlan,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Process exit class for the CLI: 2 = config, 3 = data, 4 = numerical.
inline int exit_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec:
    case ErrorCode::BadDimension:
    case ErrorCode::BadT:
    case ErrorCode::TooLarge:
    case ErrorCode::EpsilonNonPositive:
    case ErrorCode::WrongCostFamily:
      return 2;
    case ErrorCode::DimensionMismatch:
    case ErrorCode::DomainMismatch:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::MassMismatch:
    case ErrorCode::EmptyMeasure:
    case ErrorCode::PositivityViolation:
    case ErrorCode::MassNotNormalizable:
    case ErrorCode::BadMagic:
    case ErrorCode::BadVersion:
    case ErrorCode::IoFailure:
      return 3;
    case ErrorCode::NonFinite:
    case ErrorCode::SingularGram:
    case ErrorCode::DegeneratePlan:
      return 4;
  }
  return 4;
}

}  // namespace aot
