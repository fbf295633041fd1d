#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricdef {

enum class ErrorKind {
  DimensionMismatch,
  NonPrimitiveRay,
  SingularCone,
  BadFaceStructure,
  DanglingRay,
  InvalidInput,
  NotUnimodular,
  NotAPrimitiveCollection,
  NoContainingCone,
  InconsistentRelations,
  UnderdeterminedRelations,
  ResultNotComplete,
  ResultSingular,
  ResultNotAFan,
  ConditionsNotSatisfied,
  PreconditionViolated,
  UnknownName,
  ParseError,
  InternalError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorKind::SingularCone: return "SingularCone";
    case ErrorKind::BadFaceStructure: return "BadFaceStructure";
    case ErrorKind::DanglingRay: return "DanglingRay";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotAPrimitiveCollection: return "NotAPrimitiveCollection";
    case ErrorKind::NoContainingCone: return "NoContainingCone";
    case ErrorKind::InconsistentRelations: return "InconsistentRelations";
    case ErrorKind::UnderdeterminedRelations: return "UnderdeterminedRelations";
    case ErrorKind::ResultNotComplete: return "ResultNotComplete";
    case ErrorKind::ResultSingular: return "ResultSingular";
    case ErrorKind::ResultNotAFan: return "ResultNotAFan";
    case ErrorKind::ConditionsNotSatisfied: return "ConditionsNotSatisfied";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers can
/// distinguish input problems from mathematical failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace toricdef
