#include "pwl/cycles.hpp"

#include <cmath>
#include <limits>

#include "pwl/error.hpp"
#include "pwl/tolerances.hpp"

namespace pwl {

void CycleWorkspace::ensure(int dim) {
  if (n == dim) return;
  n = dim;
  t = Mat(dim);
  tmp = Mat(dim);
  p_acc = Mat(dim);
  m = Mat(dim);
  ima = Mat(dim);
  pb.assign(dim, 0.0);
  x0.assign(dim, 0.0);
  y.assign(dim, 0.0);
  y2.assign(dim, 0.0);
}

namespace {

// Fills ws.m and ws.p_acc with M and P in one backward pass:
// T starts as A_{X_{p-1}} and picks up factors to the right.
void word_matrices_into(const PWLMap& map, const Word& word, CycleWorkspace& ws) {
  const int n = map.dim();
  const int p = word.length();
  ws.p_acc = Mat::identity(n);
  if (p == 1) {
    ws.m = map.piece(word.at(0));
    return;
  }
  for (int j = p - 1; j >= 1; --j) {
    if (j == p - 1) {
      ws.t = map.piece(word.at(j));
    } else {
      mul_into(ws.t, map.piece(word.at(j)), ws.tmp);
      std::swap(ws.t, ws.tmp);
    }
    for (int i = 0; i < n * n; ++i) ws.p_acc.data()[i] += ws.t.data()[i];
  }
  mul_into(ws.t, map.piece(word.at(0)), ws.m);
}

void solve_linear_into(const Mat& a, const Vec& rhs, double det, Vec& out) {
  if (a.n() == 2) {
    // adjugate solve; det is already at hand in the cycle path
    out[0] = (a.at(1, 1) * rhs[0] - a.at(0, 1) * rhs[1]) / det;
    out[1] = (-a.at(1, 0) * rhs[0] + a.at(0, 0) * rhs[1]) / det;
  } else {
    out = solve(a, rhs);
  }
}

}  // namespace

CycleVerdict cycle_verdict(const PWLMap& map, const Word& word, CycleWorkspace& ws) {
  const int n = map.dim();
  const int p = word.length();
  ws.ensure(n);
  CycleVerdict v;
  word_matrices_into(map, word, ws);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ws.ima.at(i, j) = (i == j ? 1.0 : 0.0) - ws.m.at(i, j);
  v.det_i_minus_m = determinant(ws.ima);
  v.det_p = determinant(ws.p_acc);
  if (std::fabs(v.det_i_minus_m) <= eps_sign()) return v;  // v.unique stays false
  v.unique = true;

  matvec(ws.p_acc, map.offset().data(), ws.pb.data());
  solve_linear_into(ws.ima, ws.pb, v.det_i_minus_m, ws.x0);

  // forward orbit: admissibility flags and closure residual
  bool any_virtual = false;
  bool any_boundary = false;
  double scale = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  ws.y = ws.x0;
  for (int i = 0; i < p; ++i) {
    double pt_scale = 0.0;
    for (int c = 0; c < n; ++c) pt_scale = std::max(pt_scale, std::fabs(ws.y[c]));
    scale = std::max(scale, pt_scale);
    Admissibility a = classify_side(ws.y[0], word.at(i), pt_scale);
    if (a == Admissibility::Virtual) any_virtual = true;
    if (a == Admissibility::Boundary) any_boundary = true;
    min_margin = std::min(min_margin, (word.at(i) == 'L') ? -ws.y[0] : ws.y[0]);
    map.eval_piece(word.at(i), ws.y.data(), ws.y2.data());
    std::swap(ws.y, ws.y2);
  }
  v.min_margin = min_margin;
  v.admissibility = any_virtual     ? Admissibility::Virtual
                    : any_boundary ? Admissibility::Boundary
                                   : Admissibility::Admissible;
  double res = 0.0;
  for (int c = 0; c < n; ++c) res = std::max(res, std::fabs(ws.y[c] - ws.x0[c]));
  v.closure_residual = res;
  v.orbit_scale = std::max(1.0, scale);

  if (n == 2) {
    double mods[2];
    eigen_moduli_2x2(ws.m.at(0, 0), ws.m.at(0, 1), ws.m.at(1, 0), ws.m.at(1, 1), mods);
    v.max_modulus = mods[0];
  } else {
    v.max_modulus = eigen_moduli(ws.m).front();
  }
  v.stable = v.max_modulus < 1.0 - eps_sign();
  v.marginal = std::fabs(v.max_modulus - 1.0) <= eps_sign();
  return v;
}

WordMatrices word_matrices(const PWLMap& map, const Word& word) {
  CycleWorkspace ws;
  ws.ensure(map.dim());
  word_matrices_into(map, word, ws);
  WordMatrices wm;
  wm.m = ws.m;
  wm.p = ws.p_acc;
  wm.det_i_minus_m = determinant(identity_minus(ws.m));
  wm.det_p = determinant(ws.p_acc);
  return wm;
}

Cycle solve_cycle(const PWLMap& map, const Word& word) {
  const int n = map.dim();
  const int p = word.length();
  CycleWorkspace ws;
  CycleVerdict v = cycle_verdict(map, word, ws);
  if (!v.unique)
    throw_domain(ErrorCode::NoUniqueCycle,
                 "solve_cycle: det(I - M) vanishes, no unique cycle for word " + word.str());
  const double closure_tol =
      tolerances().closure_factor * eps_lin() * v.orbit_scale;
  if (v.closure_residual > closure_tol)
    throw_numerical(ErrorCode::ClosureFailure,
                    "solve_cycle: orbit failed to close for word " + word.str());

  Cycle cyc(word);
  cyc.mats.m = ws.m;
  cyc.mats.p = ws.p_acc;
  cyc.mats.det_i_minus_m = v.det_i_minus_m;
  cyc.mats.det_p = v.det_p;
  cyc.admissibility = v.admissibility;
  cyc.stable = v.stable;
  cyc.marginal = v.marginal;
  cyc.closure_residual = v.closure_residual;
  cyc.multipliers = eigen_moduli(cyc.mats.m);

  cyc.points.reserve(p);
  Vec y = ws.x0;
  for (int i = 0; i < p; ++i) {
    cyc.points.push_back(y);
    Vec next(n);
    map.eval_piece(word.at(i), y.data(), next.data());
    y = std::move(next);
  }
  return cyc;
}

double first_component_adjugate(const PWLMap& map, const Word& word) {
  WordMatrices wm = word_matrices(map, word);
  if (std::fabs(wm.det_i_minus_m) <= eps_sign())
    throw_domain(ErrorCode::NoUniqueCycle,
                 "first_component_adjugate: det(I - M) vanishes");
  RhoVector rho = rho_vector(map);
  return wm.det_p * rho.rho_b / wm.det_i_minus_m;
}

Admissibility admissibility_of(const std::vector<Vec>& points, const Word& word) {
  if (static_cast<int>(points.size()) != word.length())
    throw_domain(ErrorCode::BadInput, "admissibility_of: points count != word length");
  bool any_virtual = false;
  bool any_boundary = false;
  for (int i = 0; i < word.length(); ++i) {
    Admissibility a = classify_side(points[i][0], word.at(i), norm_inf(points[i]));
    if (a == Admissibility::Virtual) any_virtual = true;
    if (a == Admissibility::Boundary) any_boundary = true;
  }
  return any_virtual ? Admissibility::Virtual
         : any_boundary ? Admissibility::Boundary
                        : Admissibility::Admissible;
}

}  // namespace pwl
