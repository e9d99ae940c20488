#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pivlag {

enum class ErrorKind {
  InvalidArgument,
  PoleOfGamma,
  NoConvergence,
  PrecisionExhausted,
  AtPole,
  UnsupportedB,
  DivisionNearZero,
  MissingY,
  DegenerateKNu,
  ZeroScale,
  PoleDetected,
  StepUnderflow,
  OnCut,
  UnsupportedClosedForm,
  ExcludedNu,
  PathCrossesCut,
  TraceStalled,
  ExistenceFailure,
  RequiresBZero,
  AtPoleOfU,
  DegenerateFit,
};

/// Stable identifier used in machine-readable output.
std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pivlag
