#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pivotlab {

enum class ErrorKind {
  Parse,
  InvalidInput,
  TooLarge,
  NotPointed,
  NoBlockingRow,
  NotImproving,
  CycleDetected,
  CertificateUnavailable,
  RecursionBudgetExceeded,
  GenerationFailed,
  NotAnAof,
  NotSimple,
  BudgetExceeded,
  SingularSystem,
  OracleMismatch,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NoBlockingRow: return "NoBlockingRow";
    case ErrorKind::NotImproving: return "NotImproving";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::CertificateUnavailable: return "CertificateUnavailable";
    case ErrorKind::RecursionBudgetExceeded: return "RecursionBudgetExceeded";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::NotAnAof: return "NotAnAof";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is stable and meant for
/// programmatic dispatch; `what()` carries a one-line human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pivotlab
