#pragma once

#include <stdexcept>
#include <string>

namespace hopfknot {

enum class ErrorCode {
  MixedFields,
  DivisionByZero,
  AlgebraMismatch,
  OrderMismatch,
  NoIntegral,
  AmbiguousIntegral,
  DegeneratePairing,
  InconsistentSystem,
  MissingPivot,
  NotSpherical,
  AxiomFailure,
  NotQuasitriangular,
  NotNondegenerate,
  UnnormalizedIntegral,
  InvalidGroup,
  BadRoot,
  MalformedEvents,
  BasepointError,
  SlotMismatch,
  UnbalancedExtrema,
  NotNormalForm,
  NonAdjacentCrossing,
  ParseError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NoIntegral: return "NoIntegral";
    case ErrorCode::AmbiguousIntegral: return "AmbiguousIntegral";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::MissingPivot: return "MissingPivot";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::AxiomFailure: return "AxiomFailure";
    case ErrorCode::NotQuasitriangular: return "NotQuasitriangular";
    case ErrorCode::NotNondegenerate: return "NotNondegenerate";
    case ErrorCode::UnnormalizedIntegral: return "UnnormalizedIntegral";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::BadRoot: return "BadRoot";
    case ErrorCode::MalformedEvents: return "MalformedEvents";
    case ErrorCode::BasepointError: return "BasepointError";
    case ErrorCode::SlotMismatch: return "SlotMismatch";
    case ErrorCode::UnbalancedExtrema: return "UnbalancedExtrema";
    case ErrorCode::NotNormalForm: return "NotNormalForm";
    case ErrorCode::NonAdjacentCrossing: return "NonAdjacentCrossing";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the failure class, `what()` carries the location detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hopfknot
