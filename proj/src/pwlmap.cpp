#include "pwl/pwlmap.hpp"

#include <cmath>

#include "pwl/error.hpp"
#include "pwl/tolerances.hpp"

namespace pwl {

const char* admissibility_name(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "admissible";
    case Admissibility::Virtual: return "virtual";
    case Admissibility::Boundary: return "boundary";
  }
  return "unknown";
}

PWLMap::PWLMap(Mat a_left, Mat a_right, Vec b)
    : a_left_(std::move(a_left)), a_right_(std::move(a_right)), b_(std::move(b)) {
  const int n = a_left_.n();
  if (n < 1 || a_right_.n() != n || static_cast<int>(b_.size()) != n)
    throw_domain(ErrorCode::BadInput, "map pieces and offset must share one dimension");
  if (!a_left_.all_finite() || !a_right_.all_finite())
    throw_domain(ErrorCode::BadInput, "map matrices must be finite");
  for (double v : b_)
    if (!std::isfinite(v)) throw_domain(ErrorCode::BadInput, "map offset must be finite");
  // continuity across x_1 = 0 requires identical columns 2..n
  double scale = std::max({1.0, a_left_.norm_inf(), a_right_.norm_inf()});
  for (int i = 0; i < n; ++i)
    for (int j = 1; j < n; ++j)
      if (std::fabs(a_left_.at(i, j) - a_right_.at(i, j)) > eps_lin() * scale)
        throw_domain(ErrorCode::BadInput,
                     "continuity violation: A_L and A_R differ beyond the first column");
}

PWLMap PWLMap::pws2d(double alpha, double beta) {
  Mat al(2, {alpha, 1.0, beta + 0.5, 0.0});
  Mat ar(2, {alpha, 1.0, beta - 0.5, 0.0});
  return PWLMap(al, ar, Vec{1.0, 0.0});
}

PWLMap PWLMap::normal_form_2d(double tau_l, double delta_l, double tau_r, double delta_r) {
  Mat al(2, {tau_l, 1.0, -delta_l, 0.0});
  Mat ar(2, {tau_r, 1.0, -delta_r, 0.0});
  return PWLMap(al, ar, Vec{1.0, 0.0});
}

Vec PWLMap::eval(const Vec& x) const {
  const Mat& a = (x[0] < 0.0) ? a_left_ : a_right_;
  Vec y = matvec(a, x);
  for (int i = 0; i < dim(); ++i) y[i] += b_[i];
  return y;
}

void PWLMap::eval_piece(char symbol, const double* x, double* y) const {
  const Mat& a = piece(symbol);
  matvec(a, x, y);
  for (int i = 0; i < dim(); ++i) y[i] += b_[i];
}

RhoVector rho_vector(const PWLMap& map) {
  Mat il = identity_minus(map.left());
  Mat ir = identity_minus(map.right());
  Mat adj_l = adjugate(il);
  Mat adj_r = adjugate(ir);
  const int n = map.dim();
  double scale = std::max({1.0, adj_l.norm_inf(), adj_r.norm_inf()});
  for (int j = 0; j < n; ++j)
    if (std::fabs(adj_l.at(0, j) - adj_r.at(0, j)) > 1e3 * eps_lin() * scale)
      throw_internal("rho_vector: adjugate first rows disagree between pieces");
  RhoVector r;
  r.rho.resize(n);
  r.rho_b = 0.0;
  for (int j = 0; j < n; ++j) {
    r.rho[j] = adj_l.at(0, j);
    r.rho_b += r.rho[j] * map.offset()[j];
  }
  return r;
}

Admissibility classify_side(double x1, char symbol, double scale) {
  const double band = eps_sign() * (1.0 + scale);
  if (std::fabs(x1) <= band) return Admissibility::Boundary;
  const bool left = x1 < 0.0;
  if ((symbol == 'L') == left) return Admissibility::Admissible;
  return Admissibility::Virtual;
}

namespace {

FixedPointReport fixed_point_side(const PWLMap& map, char side, const RhoVector& rho) {
  FixedPointReport rep;
  rep.side = side;
  const Mat& a = map.piece(side);
  Mat ima = identity_minus(a);
  rep.det_i_minus_a = determinant(ima);
  rep.multipliers = eigen_moduli(a);
  rep.stable = !rep.multipliers.empty() && rep.multipliers.front() < 1.0 - eps_sign();
  if (std::fabs(rep.det_i_minus_a) <= eps_sign()) {
    rep.exists = false;
    return rep;
  }
  rep.exists = true;
  rep.point = solve(ima, map.offset());
  rep.first_component = rho.rho_b / rep.det_i_minus_a;
  rep.admissibility = classify_side(rep.point[0], side, norm_inf(rep.point));
  return rep;
}

}  // namespace

std::pair<FixedPointReport, FixedPointReport> fixed_points(const PWLMap& map) {
  RhoVector rho = rho_vector(map);
  return {fixed_point_side(map, 'L', rho), fixed_point_side(map, 'R', rho)};
}

Tristate is_homeomorphism(const PWLMap& map) {
  const double prod = determinant(map.left()) * determinant(map.right());
  if (std::fabs(prod) <= eps_sign()) return Tristate::Indeterminate;
  return prod > 0.0 ? Tristate::True : Tristate::False;
}

}  // namespace pwl
