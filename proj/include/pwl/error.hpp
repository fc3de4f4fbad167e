#ifndef PWL_ERROR_HPP
#define PWL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pwl {

// Error taxonomy shared by the whole library.  Domain errors are violated
// preconditions or hypothesis failures on valid numerics; numerical errors
// are conditioning/convergence problems; internal errors are bugs.
enum class ErrorKind { Domain, Numerical, Internal };

enum class ErrorCode {
  Generic,
  NotCoprime,
  NoUniqueCycle,
  ClosureFailure,
  Divergence,
  NonFiniteState,
  NotACircle,
  TooFewSamples,
  AmbiguousLift,
  OrderingViolated,
  NoSignChange,
  LostUniqueness,
  EmptyAdmissibleSet,
  OnBoundary,
  NonConvergence,
  BadInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), code_(code) {}
  ErrorKind kind() const { return kind_; }
  ErrorCode code() const { return code_; }

 private:
  ErrorKind kind_;
  ErrorCode code_;
};

[[noreturn]] inline void throw_domain(ErrorCode code, const std::string& msg) {
  throw Error(ErrorKind::Domain, code, msg);
}
[[noreturn]] inline void throw_numerical(ErrorCode code, const std::string& msg) {
  throw Error(ErrorKind::Numerical, code, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
  throw Error(ErrorKind::Internal, ErrorCode::Generic, msg);
}

const char* error_code_name(ErrorCode code);

}  // namespace pwl

#endif
