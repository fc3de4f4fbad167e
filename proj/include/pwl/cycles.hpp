#ifndef PWL_CYCLES_HPP
#define PWL_CYCLES_HPP

#include <vector>

#include "pwl/pwlmap.hpp"
#include "pwl/words.hpp"

namespace pwl {

// M = A_{X_{p-1}} ... A_{X_1} A_{X_0} and the geometric-sum matrix
// P = A_{X_{p-1}} ... A_{X_1} + ... + A_{X_{p-1}} + I, so that the word
// composition is x -> M x + P b.  P has no A_{X_0} factor.
struct WordMatrices {
  Mat m;
  Mat p;
  double det_i_minus_m = 0.0;
  double det_p = 0.0;
};

struct Cycle {
  explicit Cycle(Word w) : word(std::move(w)) {}
  Word word;
  std::vector<Vec> points;  // y^(0) = x^X, then forward images under the word
  WordMatrices mats;
  Admissibility admissibility = Admissibility::Boundary;
  std::vector<double> multipliers;  // eigen moduli of M, descending
  bool stable = false;              // max modulus < 1 - eps_sign
  bool marginal = false;            // max modulus within eps_sign of 1
  double closure_residual = 0.0;
};

// Reusable buffers for repeated cycle solves (parameter sweeps).
struct CycleWorkspace {
  int n = 0;
  Mat t, tmp, p_acc, m, ima;
  Vec pb, x0, y, y2;
  void ensure(int dim);
};

// Scan-grade result: everything needed for an admissible+stable test without
// materialising the orbit.
struct CycleVerdict {
  bool unique = false;  // |det(I - M)| > eps_sign
  double det_i_minus_m = 0.0;
  double det_p = 0.0;
  Admissibility admissibility = Admissibility::Boundary;
  double min_margin = 0.0;  // min over points of the signed side distance
  double max_modulus = 0.0;
  bool stable = false;
  bool marginal = false;
  double closure_residual = 0.0;
  double orbit_scale = 1.0;
};

CycleVerdict cycle_verdict(const PWLMap& map, const Word& word, CycleWorkspace& ws);

WordMatrices word_matrices(const PWLMap& map, const Word& word);

// Solves x^X = (I - M)^{-1} P b and regenerates the orbit by forward
// iteration; throws NoUniqueCycle near det(I - M) = 0 and ClosureFailure when
// the orbit fails to return within tolerance.
Cycle solve_cycle(const PWLMap& map, const Word& word);

// x^X_1 = det(P) rho^T b / det(I - M).
double first_component_adjugate(const PWLMap& map, const Word& word);

Admissibility admissibility_of(const std::vector<Vec>& points, const Word& word);

}  // namespace pwl

#endif
