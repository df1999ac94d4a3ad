#pragma once

#include <stdexcept>
#include <string>

namespace opkit {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  NonFinite,
  Singular,
  AmbientMismatch,
  NotBoundedBelow,
  NotPure,
  NoWanderingSubspace,
  UnsupportedRegime,
  OneInSpectrum,
  NotConcave,
  OutsideDisc,
  TailNotConvergent,
  ZeroConstantTerm,
  ZeroOnBoundary,
  SymbolSingularAtOrigin,
  TruncationTooSmall,
  InvalidAutomorphism,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// C API maps them one-to-one onto opk_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opkit
