#ifndef PWL_TOLERANCES_HPP
#define PWL_TOLERANCES_HPP

namespace pwl {

// Numerical tolerances used across the library.  Sign decisions on
// determinants and first components use eps_sign; linear-algebra residual
// and continuity checks use eps_lin.  Values are process-wide settings:
// adjust them before starting an analysis, not concurrently with one.
struct Tolerances {
  double eps_sign = 1e-9;        // sign decisions (admissibility bands, det tests)
  double eps_lin = 1e-12;        // residuals, shared-column continuity
  double closure_factor = 1e4;   // cycle closure alarm = factor * eps_lin * scale
  double mode_lock_tol = 1e-7;   // orbit revisit distance declaring periodicity
};

Tolerances& tolerances();

inline double eps_sign() { return tolerances().eps_sign; }
inline double eps_lin() { return tolerances().eps_lin; }

}  // namespace pwl

#endif
