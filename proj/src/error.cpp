#include "pwl/error.hpp"

#include "pwl/tolerances.hpp"

namespace pwl {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Generic: return "Generic";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NoUniqueCycle: return "NoUniqueCycle";
    case ErrorCode::ClosureFailure: return "ClosureFailure";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NotACircle: return "NotACircle";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::AmbiguousLift: return "AmbiguousLift";
    case ErrorCode::OrderingViolated: return "OrderingViolated";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::LostUniqueness: return "LostUniqueness";
    case ErrorCode::EmptyAdmissibleSet: return "EmptyAdmissibleSet";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace pwl
