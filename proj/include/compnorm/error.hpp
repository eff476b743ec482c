#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compnorm {

using Complex = std::complex<double>;

enum class ErrorCode {
  SyntaxError,
  DomainError,
  NotSelfMap,
  SingularBoundaryPoint,
  PrecisionLoss,
  BoundaryRootSuspected,
  RegionOutsideDomain,
  NonconvergentRoot,
  CertificationMismatch,
  InfiniteValue,
  NoConvergence,
  TruncationTooLoose,
  ResolutionExceeded,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Throws InvalidArgument unless `z` has finite components.
inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
}

}  // namespace compnorm
