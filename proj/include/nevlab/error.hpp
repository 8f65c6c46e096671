#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nevlab {

enum class ErrorCode {
  IdenticallyZero,
  IdenticallyZeroComponent,
  UnsupportedZeroSet,
  ZeroOnBoundary,
  Overflow,
  DimensionMismatch,
  Infeasible,
  PositionViolated,
  NoSelection,
  OutsideDomain,
  OutsideBall,
  AtPole,
  StepTooCoarse,
  NodeOnSingularity,
  ZeroNearCircle,
  BasePointOnDivisor,
  NonConvergentQuadrature,
  Degenerate,
  RootIsolationFailed,
  InvalidInput,
};

inline std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IdenticallyZero: return "IdenticallyZero";
    case ErrorCode::IdenticallyZeroComponent: return "IdenticallyZeroComponent";
    case ErrorCode::UnsupportedZeroSet: return "UnsupportedZeroSet";
    case ErrorCode::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::PositionViolated: return "PositionViolated";
    case ErrorCode::NoSelection: return "NoSelection";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::OutsideBall: return "OutsideBall";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::NodeOnSingularity: return "NodeOnSingularity";
    case ErrorCode::ZeroNearCircle: return "ZeroNearCircle";
    case ErrorCode::BasePointOnDivisor: return "BasePointOnDivisor";
    case ErrorCode::NonConvergentQuadrature: return "NonConvergentQuadrature";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::RootIsolationFailed: return "RootIsolationFailed";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace nevlab
