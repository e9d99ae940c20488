#include "pivlag/errors.hpp"

namespace pivlag {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PoleOfGamma: return "PoleOfGamma";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::AtPole: return "AtPole";
    case ErrorKind::UnsupportedB: return "UnsupportedB";
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::MissingY: return "MissingY";
    case ErrorKind::DegenerateKNu: return "DegenerateKNu";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::PoleDetected: return "PoleDetected";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::OnCut: return "OnCut";
    case ErrorKind::UnsupportedClosedForm: return "UnsupportedClosedForm";
    case ErrorKind::ExcludedNu: return "ExcludedNu";
    case ErrorKind::PathCrossesCut: return "PathCrossesCut";
    case ErrorKind::TraceStalled: return "TraceStalled";
    case ErrorKind::ExistenceFailure: return "ExistenceFailure";
    case ErrorKind::RequiresBZero: return "RequiresBZero";
    case ErrorKind::AtPoleOfU: return "AtPoleOfU";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

}  // namespace pivlag
