#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sod {

enum class ErrorKind {
  DegreeMismatch,
  InvalidArgument,
  NotDisjoint,
  NotCentral,
  NotQuasisymmetric,
  NotNormal,
  GramMismatch,
  FinalVerificationFailure,
  RelationViolation,
  VerificationFailure,
  CompositionUnsupported,
  BudgetExceeded,
  NotGolay,
  NotReachable,
  OddTarget,
  OffsetCollision,
  ComplementarityFailure,
  DenseCapExceeded,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotQuasisymmetric: return "NotQuasisymmetric";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::GramMismatch: return "GramMismatch";
    case ErrorKind::FinalVerificationFailure: return "FinalVerificationFailure";
    case ErrorKind::RelationViolation: return "RelationViolation";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::CompositionUnsupported: return "CompositionUnsupported";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotGolay: return "NotGolay";
    case ErrorKind::NotReachable: return "NotReachable";
    case ErrorKind::OddTarget: return "OddTarget";
    case ErrorKind::OffsetCollision: return "OffsetCollision";
    case ErrorKind::ComplementarityFailure: return "ComplementarityFailure";
    case ErrorKind::DenseCapExceeded: return "DenseCapExceeded";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sod
