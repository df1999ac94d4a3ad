#include "opkit/error.hpp"

namespace opkit {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotBoundedBelow: return "NotBoundedBelow";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NoWanderingSubspace: return "NoWanderingSubspace";
    case ErrorCode::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorCode::OneInSpectrum: return "OneInSpectrum";
    case ErrorCode::NotConcave: return "NotConcave";
    case ErrorCode::OutsideDisc: return "OutsideDisc";
    case ErrorCode::TailNotConvergent: return "TailNotConvergent";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorCode::SymbolSingularAtOrigin: return "SymbolSingularAtOrigin";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::InvalidAutomorphism: return "InvalidAutomorphism";
  }
  return "Unknown";
}

}  // namespace opkit
