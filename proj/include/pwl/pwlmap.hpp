#ifndef PWL_PWLMAP_HPP
#define PWL_PWLMAP_HPP

#include <string>
#include <utility>

#include "pwl/matrixcore.hpp"

namespace pwl {

enum class Admissibility { Admissible, Virtual, Boundary };
const char* admissibility_name(Admissibility a);

enum class Tristate { True, False, Indeterminate };

// Continuous two-piece piecewise-linear map x -> A_L x + b (x_1 <= 0),
// A_R x + b (x_1 >= 0).  A_L and A_R must agree in every column but the
// first; this is validated at construction.
class PWLMap {
 public:
  PWLMap(Mat a_left, Mat a_right, Vec b);

  // x_2' = beta x_1 - |x_1|/2 split by the sign of x_1:
  // A_L = [[alpha,1],[beta+1/2,0]], A_R = [[alpha,1],[beta-1/2,0]], b = (1,0).
  static PWLMap pws2d(double alpha, double beta);
  // Border-collision normal form pieces [[tau,1],[-delta,0]], b = (1,0).
  static PWLMap normal_form_2d(double tau_l, double delta_l, double tau_r, double delta_r);

  int dim() const { return b_.size() > 0 ? static_cast<int>(b_.size()) : 0; }
  const Mat& left() const { return a_left_; }
  const Mat& right() const { return a_right_; }
  const Mat& piece(char symbol) const { return symbol == 'L' ? a_left_ : a_right_; }
  const Vec& offset() const { return b_; }

  Vec eval(const Vec& x) const;
  // y = A_s x + b into a caller buffer; y may not alias x.
  void eval_piece(char symbol, const double* x, double* y) const;

 private:
  Mat a_left_, a_right_;
  Vec b_;
};

// First row of adj(I - A_L), which equals the first row of adj(I - A_R);
// rho_b carries rho^T b.
struct RhoVector {
  Vec rho;
  double rho_b = 0.0;
};
RhoVector rho_vector(const PWLMap& map);

struct FixedPointReport {
  char side = 'L';
  bool exists = false;              // det(I - A_side) away from zero
  Vec point;                        // empty when !exists
  double first_component = 0.0;     // rho^T b / det(I - A_side)
  double det_i_minus_a = 0.0;
  Admissibility admissibility = Admissibility::Boundary;
  std::vector<double> multipliers;  // eigen moduli of A_side, descending
  bool stable = false;
};

std::pair<FixedPointReport, FixedPointReport> fixed_points(const PWLMap& map);

// det(A_L) det(A_R) > eps_sign; near-zero products are Indeterminate.
Tristate is_homeomorphism(const PWLMap& map);

// Boundary band: |x1| <= eps_sign * (1 + scale) classifies as Boundary.
Admissibility classify_side(double x1, char symbol, double scale);

}  // namespace pwl

#endif
