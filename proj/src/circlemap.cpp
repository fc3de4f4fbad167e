#include "pwl/circlemap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "pwl/error.hpp"
#include "pwl/tolerances.hpp"

namespace pwl {

namespace {

constexpr double kGapLimit = 0.45;  // refuse lift continuation beyond this jump

double wrap01(double t) {
  t -= std::floor(t);
  return (t >= 1.0) ? 0.0 : t;
}

// Angle parameter measured clockwise from the downward ray at `center`,
// normalised to [0,1).  With the center on the switching manifold this puts
// x_1 < 0 exactly in (0, 1/2).
double raw_angle_t(const double* x, const Vec& center) {
  const double vx = x[0] - center[0];
  const double vy = x[1] - center[1];
  if (vx == 0.0 && vy == 0.0)
    throw_domain(ErrorCode::NotACircle, "circle parametrization hit the center point");
  const double phi = std::atan2(vy, vx);
  return wrap01((-0.5 * std::numbers::pi - phi) / (2.0 * std::numbers::pi));
}

double circ_dist(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

struct RawSample {
  double t, g, x1, x2;
};

}  // namespace

double CircleModel::lift_at(double t) const {
  const double t0 = samples.front().t;
  const double k = std::floor(t - t0);
  const double tau = t - k;  // in [t0, t0 + 1)
  size_t lo = 0, hi = samples.size();
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (samples[mid].t <= tau)
      lo = mid;
    else
      hi = mid;
  }
  double ta = samples[lo].t, ga = samples[lo].lift;
  double tb, gb;
  if (lo + 1 < samples.size()) {
    tb = samples[lo + 1].t;
    gb = samples[lo + 1].lift;
  } else {  // wrap segment closes at (t0 + 1, G0 + degree)
    tb = t0 + 1.0;
    gb = samples.front().lift + degree;
  }
  double frac = (tb > ta) ? (tau - ta) / (tb - ta) : 0.0;
  return ga + frac * (gb - ga) + k * degree;
}

double CircleModel::map_at(double t) const { return wrap01(lift_at(t)); }

double CircleModel::param_of(const Vec& x) const {
  double t = raw_angle_t(x.data(), center);
  if (!remap_active) return t;
  double u = wrap01(t - remap_a);
  if (u < remap_len_l) return 0.5 * u / remap_len_l;
  return 0.5 + 0.5 * (u - remap_len_l) / (1.0 - remap_len_l);
}

OrbitSample sample_attractor(const PWLMap& map, const Vec& x0, int transient, int keep) {
  if (map.dim() != static_cast<int>(x0.size()))
    throw_domain(ErrorCode::BadInput, "sample_attractor: x0 dimension mismatch");
  if (transient < 0 || keep < 1)
    throw_domain(ErrorCode::BadInput, "sample_attractor: counts must be positive");
  const double guard = 1e8 * (1.0 + norm_inf(map.offset()));
  OrbitSample out;
  out.transient_discarded = transient;
  out.points.reserve(static_cast<size_t>(keep));
  Vec x = x0;
  Vec y(map.dim());
  for (int i = 0; i < transient + keep; ++i) {
    map.eval_piece(x[0] < 0.0 ? 'L' : 'R', x.data(), y.data());
    std::swap(x, y);
    for (double v : x)
      if (!std::isfinite(v))
        throw_numerical(ErrorCode::NonFiniteState, "sample_attractor: non-finite state");
    if (norm_inf(x) > guard)
      throw_numerical(ErrorCode::Divergence, "sample_attractor: orbit diverged");
    if (i >= transient) out.points.push_back(x);
  }
  return out;
}

std::optional<int> detect_period(const OrbitSample& orbit, int p_max) {
  const int k = static_cast<int>(orbit.points.size());
  if (k < 3) return std::nullopt;
  double scale = 1.0;
  for (const auto& pt : orbit.points) scale = std::max(scale, norm_inf(pt));
  const double tol = tolerances().mode_lock_tol * scale;
  for (int p = 1; p <= p_max && p + 2 < k; ++p) {
    bool hit = true;
    for (int back = 1; back <= 2 && hit; ++back) {
      const Vec& a = orbit.points[static_cast<size_t>(k - back)];
      const Vec& b = orbit.points[static_cast<size_t>(k - back - p)];
      for (size_t c = 0; c < a.size(); ++c)
        if (std::fabs(a[c] - b[c]) > tol) {
          hit = false;
          break;
        }
    }
    if (hit) return p;
  }
  return std::nullopt;
}

namespace {

// Shared reconstruction core: deduplicate, align to the switching manifold
// when possible, continue the lift, derive degree / c / lift offset /
// rotation estimate.
CircleModel build_model(std::vector<RawSample> raw, const Vec& center, double dedup_tol,
                        int rotation_iterations, int max_den) {
  if (raw.size() < 3)
    throw_domain(ErrorCode::TooFewSamples, "circle reconstruction needs >= 3 samples");
  std::sort(raw.begin(), raw.end(),
            [](const RawSample& a, const RawSample& b) { return a.t < b.t; });

  // collapse clusters; images of a cluster must agree or the sampled set is
  // not a graph over the angle
  std::vector<RawSample> ded;
  const double img_tol = std::max(50.0 * dedup_tol, 1e-6);
  for (const auto& s : raw) {
    if (!ded.empty() && s.t - ded.back().t <= dedup_tol) {
      if (circ_dist(s.g, ded.back().g) > img_tol)
        throw_domain(ErrorCode::NotACircle,
                     "circle reconstruction: angle parametrization not injective");
      continue;
    }
    ded.push_back(s);
  }
  if (ded.size() >= 2 && (ded.front().t + 1.0 - ded.back().t) <= dedup_tol) {
    if (circ_dist(ded.back().g, ded.front().g) > img_tol)
      throw_domain(ErrorCode::NotACircle,
                   "circle reconstruction: angle parametrization not injective");
    ded.pop_back();
  }
  if (ded.size() < 3)
    throw_domain(ErrorCode::TooFewSamples, "circle reconstruction: too few distinct angles");

  CircleModel model;
  model.center = center;

  // boundary crossings: sign alternations of x_1 walking once around
  const double band = eps_sign();
  int crossings = 0;
  double first_r_to_l = -1.0, first_l_to_r = -1.0;
  for (size_t i = 0; i < ded.size(); ++i) {
    const RawSample& a = ded[i];
    const RawSample& b = ded[(i + 1) % ded.size()];
    if ((a.x1 < -band && b.x1 > band) || (a.x1 > band && b.x1 < -band)) {
      ++crossings;
      double gap = (i + 1 < ded.size()) ? b.t - a.t : b.t + 1.0 - a.t;
      double frac = std::fabs(a.x1) / (std::fabs(a.x1) + std::fabs(b.x1));
      double tc = wrap01(a.t + frac * gap);
      if (a.x1 > 0)
        first_r_to_l = tc;
      else
        first_l_to_r = tc;
    }
  }
  model.boundary_crossings = crossings;

  // align t so that x_1 < 0 corresponds to (0, 1/2)
  if (std::fabs(center[0]) <= band) {
    model.aligned = true;  // rays t = 0, 1/2 lie on the manifold already
  } else if (crossings == 2 && first_r_to_l >= 0.0 && first_l_to_r >= 0.0) {
    double len_l = wrap01(first_l_to_r - first_r_to_l);
    if (len_l > 0.0 && len_l < 1.0) {
      model.remap_active = true;
      model.remap_a = first_r_to_l;
      model.remap_len_l = len_l;
      auto remap = [&](double t) {
        double u = wrap01(t - first_r_to_l);
        return (u < len_l) ? 0.5 * u / len_l : 0.5 + 0.5 * (u - len_l) / (1.0 - len_l);
      };
      for (auto& s : ded) {
        s.t = remap(s.t);
        s.g = remap(s.g);
      }
      std::sort(ded.begin(), ded.end(),
                [](const RawSample& a, const RawSample& b) { return a.t < b.t; });
      model.aligned = true;
    }
  }

  // a gap of half the circle or more means the center is not enclosed or the
  // sampling is too sparse to trust
  for (size_t i = 0; i < ded.size(); ++i) {
    double gap = (i + 1 < ded.size()) ? ded[i + 1].t - ded[i].t
                                      : ded.front().t + 1.0 - ded.back().t;
    if (gap >= 0.5)
      throw_domain(ErrorCode::NotACircle,
                   "circle reconstruction: angular gap >= 1/2, center not enclosed");
  }

  // lift continuation through the sorted samples
  model.samples.reserve(ded.size());
  double prev = 0.0;
  for (size_t i = 0; i < ded.size(); ++i) {
    CircleSample cs;
    cs.t = ded[i].t;
    cs.g = ded[i].g;
    cs.x1 = ded[i].x1;
    cs.x2 = ded[i].x2;
    if (i == 0) {
      cs.lift = cs.g;
    } else {
      cs.lift = cs.g + std::round(prev - cs.g);
      if (std::fabs(cs.lift - prev) > kGapLimit)
        throw_numerical(ErrorCode::AmbiguousLift,
                        "lift continuation: consecutive images more than 1/2 apart");
    }
    prev = cs.lift;
    model.samples.push_back(cs);
  }
  double wrap_lift = model.samples.front().g + std::round(prev - model.samples.front().g);
  if (std::fabs(wrap_lift - prev) > kGapLimit)
    throw_numerical(ErrorCode::AmbiguousLift,
                    "lift continuation: wrap-around jump more than 1/2");
  model.degree = static_cast<int>(std::lround(wrap_lift - model.samples.front().lift));

  // lift monotonicity in the direction of the degree
  model.monotone = true;
  const double mono_tol = 1e-9;
  for (size_t i = 0; i < model.samples.size(); ++i) {
    double a = model.samples[i].lift;
    double b = (i + 1 < model.samples.size()) ? model.samples[i + 1].lift : wrap_lift;
    double step = b - a;
    if ((model.degree >= 0 && step < -mono_tol) || (model.degree < 0 && step > mono_tol)) {
      model.monotone = false;
      break;
    }
  }

  // c = g^{-1}(0): the lift crosses an integer exactly once per winding
  if (model.degree == 1 || model.degree == -1) {
    const double g0 = model.samples.front().lift;
    const double target = (model.degree == 1) ? std::ceil(g0) : std::floor(g0);
    double c = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < model.samples.size(); ++i) {
      double ta = model.samples[i].t, ga = model.samples[i].lift;
      double tb, gb;
      if (i + 1 < model.samples.size()) {
        tb = model.samples[i + 1].t;
        gb = model.samples[i + 1].lift;
      } else {
        tb = model.samples.front().t + 1.0;
        gb = wrap_lift;
      }
      bool hit = (model.degree == 1) ? (ga <= target && gb >= target)
                                     : (ga >= target && gb <= target);
      if (hit && gb != ga) {
        c = wrap01(ta + (target - ga) / (gb - ga) * (tb - ta));
        break;
      }
    }
    model.c = c;
  } else {
    model.c = std::numeric_limits<double>::quiet_NaN();
  }

  // degree-1 lift split G = g + r below c, g + r + 1 at and above
  if (model.degree == 1) {
    int r = std::numeric_limits<int>::max();
    for (const auto& s : model.samples)
      r = std::min(r, static_cast<int>(std::lround(s.lift - s.g)));
    model.lift_offset = r;
  }

  if (model.degree == 1 && model.monotone && rotation_iterations > 0) {
    model.rotation = rotation_number([&model](double t) { return model.lift_at(t); },
                                     model.samples.front().t, rotation_iterations, max_den);
  }
  return model;
}

}  // namespace

CircleModel reconstruct_circle(const OrbitSample& orbit, const Vec& center,
                               int rotation_iterations, int max_den) {
  if (center.size() != 2 || orbit.points.empty() || orbit.points.front().size() != 2)
    throw_domain(ErrorCode::BadInput, "reconstruct_circle supports n = 2 only");
  std::vector<RawSample> raw;
  raw.reserve(orbit.points.size());
  for (size_t i = 0; i + 1 < orbit.points.size(); ++i) {
    RawSample s;
    s.t = raw_angle_t(orbit.points[i].data(), center);
    s.g = raw_angle_t(orbit.points[i + 1].data(), center);
    s.x1 = orbit.points[i][0];
    s.x2 = orbit.points[i][1];
    raw.push_back(s);
  }
  return build_model(std::move(raw), center, 1e-8, rotation_iterations, max_den);
}

CircleModel circle_model_from_pairs(const std::vector<std::pair<Vec, Vec>>& pairs,
                                    const Vec& center, double dedup_tol,
                                    int rotation_iterations, int max_den) {
  std::vector<RawSample> raw;
  raw.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    RawSample s;
    s.t = raw_angle_t(x.data(), center);
    s.g = raw_angle_t(y.data(), center);
    s.x1 = x[0];
    s.x2 = x[1];
    raw.push_back(s);
  }
  return build_model(std::move(raw), center, dedup_tol, rotation_iterations, max_den);
}

int degree_of(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 3)
    throw_domain(ErrorCode::TooFewSamples, "degree_of needs >= 3 samples");
  std::sort(samples.begin(), samples.end());
  double prev = 0.0, first = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double g = wrap01(samples[i].second);
    double lift;
    if (i == 0) {
      lift = g;
      first = g;
    } else {
      if (samples[i].first - samples[i - 1].first <= 0.0) continue;  // duplicate t
      lift = g + std::round(prev - g);
      if (std::fabs(lift - prev) > kGapLimit)
        throw_numerical(ErrorCode::AmbiguousLift, "degree_of: samples too sparse");
    }
    prev = lift;
  }
  double wrap = first + std::round(prev - first);
  if (std::fabs(wrap - prev) > kGapLimit)
    throw_numerical(ErrorCode::AmbiguousLift, "degree_of: samples too sparse at wrap");
  return static_cast<int>(std::lround(wrap - first));
}

RotationEstimate rotation_number(const std::function<double(double)>& lift, double t0,
                                 int iterations, int max_den) {
  if (iterations < 1) throw_domain(ErrorCode::BadInput, "rotation_number: iterations >= 1");
  double t = t0;
  for (int i = 0; i < iterations; ++i) {
    t = lift(t);
    if (!std::isfinite(t))
      throw_numerical(ErrorCode::NonFiniteState, "rotation_number: lift diverged");
  }
  RotationEstimate est;
  est.iterations = iterations;
  est.value = wrap01((t - t0) / iterations);
  est.error_bound = 1.0 / iterations;
  auto [num, den] = best_rational(est.value, max_den);
  est.num = num;
  est.den = den;
  return est;
}

OrderedOrbit ordering_check(const std::vector<double>& orbit_ts, double c) {
  const int p = static_cast<int>(orbit_ts.size());
  if (p < 1) throw_domain(ErrorCode::BadInput, "ordering_check: empty orbit");
  OrderedOrbit oo;
  oo.p = p;
  int m = 0;
  for (double t : orbit_ts)
    if (t >= c) ++m;
  oo.m = m;
  int i0 = 0;
  for (int i = 1; i < p; ++i)
    if (orbit_ts[static_cast<size_t>(i)] < orbit_ts[static_cast<size_t>(i0)]) i0 = i;
  oo.s = orbit_ts[static_cast<size_t>(i0)];
  if (p == 1) {
    oo.d = 0;  // inverse undefined for p = 1; nothing to verify
    return oo;
  }
  if (std::gcd(m, p) != 1)
    throw_domain(ErrorCode::NotCoprime,
                 "ordering_check: point count in [c,1) not coprime to the period");
  oo.d = mult_inverse(m, p);
  double prev = oo.s;
  for (int j = 1; j < p; ++j) {
    double cur = orbit_ts[static_cast<size_t>((i0 + static_cast<long long>(j) * oo.d) % p)];
    if (!(cur > prev))
      throw_domain(ErrorCode::OrderingViolated,
                   "ordering_check: orbit violates the d-step ordering chain");
    prev = cur;
  }
  return oo;
}

Word itinerary_from_circle(const CircleModel& model, const std::vector<Vec>& orbit_points) {
  if (orbit_points.empty())
    throw_domain(ErrorCode::BadInput, "itinerary_from_circle: empty orbit");
  std::string s;
  for (const auto& pt : orbit_points) {
    const double band = eps_sign() * (1.0 + norm_inf(pt));
    if (std::fabs(pt[0]) <= band)
      throw_domain(ErrorCode::OnBoundary,
                   "itinerary_from_circle: point inside the boundary band");
    if (model.aligned) {
      double t = model.param_of(pt);
      if (circ_dist(t, 0.0) <= 1e-9 || circ_dist(t, 0.5) <= 1e-9)
        throw_domain(ErrorCode::OnBoundary,
                     "itinerary_from_circle: parameter at a manifold anchor");
    }
    s.push_back(pt[0] < 0.0 ? 'L' : 'R');
  }
  return Word(s);
}

namespace {

// Piecewise inverse of an invertible two-piece map.
struct InverseMap {
  Mat inv_l, inv_r;
  Vec b;
  bool valid = false;

  explicit InverseMap(const PWLMap& map) : b(map.offset()) {
    try {
      inv_l = inverse(map.left());
      inv_r = inverse(map.right());
      valid = true;
    } catch (const Error&) {
      valid = false;
    }
  }

  Vec apply(const Vec& y) const {
    Vec u{y[0] - b[0], y[1] - b[1]};
    Vec xl = matvec(inv_l, u);
    if (xl[0] <= 0.0) return xl;
    Vec xr = matvec(inv_r, u);
    if (xr[0] >= 0.0) return xr;
    return (std::fabs(xl[0]) < std::fabs(xr[0])) ? xl : xr;
  }
};

bool orbit_bounded(const PWLMap& map, const InverseMap* inv, Vec x, int steps, double guard) {
  Vec y(2);
  for (int i = 0; i < steps; ++i) {
    if (inv) {
      y = inv->apply(x);
      std::swap(x, y);
    } else {
      map.eval_piece(x[0] < 0.0 ? 'L' : 'R', x.data(), y.data());
      std::swap(x, y);
    }
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || norm_inf(x) > guard) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<Vec, Vec>> trace_unstable_circle(const PWLMap& map, int chord_points,
                                                       int iterations) {
  if (map.dim() != 2)
    throw_domain(ErrorCode::BadInput, "trace_unstable_circle supports n = 2 only");
  auto [fl, fr] = fixed_points(map);
  if (!fl.exists || !fr.exists)
    throw_domain(ErrorCode::NotACircle, "trace_unstable_circle: needs both fixed points");
  bool has_repeller = false;
  for (const auto* cand : {&fl, &fr})
    if (cand->admissibility == Admissibility::Admissible &&
        cand->multipliers.back() > 1.0 + eps_sign())
      has_repeller = true;
  if (!has_repeller)
    throw_domain(ErrorCode::NotACircle,
                 "trace_unstable_circle: no admissible repelling fixed point");

  const double scale = 1.0 + norm_inf(fl.point) + norm_inf(fr.point);
  const double guard = 50.0 * (scale + norm_inf(map.offset()));
  InverseMap inv(map);

  // A heteroclinic seed: forward orbit bounded (accumulates on the attracting
  // end) and backward orbit bounded (accumulates on the repelling end along
  // its negative-multiplier direction).  The closure of the seed chord's
  // two-sided orbit is then an invariant circle through both fixed points.
  Vec mid{0.5 * (fl.point[0] + fr.point[0]), 0.5 * (fl.point[1] + fr.point[1])};
  Vec dir{fr.point[0] - fl.point[0], fr.point[1] - fl.point[1]};
  double dn = std::hypot(dir[0], dir[1]);
  if (dn < eps_sign())
    throw_domain(ErrorCode::NotACircle, "trace_unstable_circle: fixed points coincide");
  Vec perp{-dir[1] / dn, dir[0] / dn};

  Vec a0;
  bool found = false;
  for (double s : {0.8, -0.8, 0.5, -0.5, 0.3, -0.3, 1.2, -1.2, 0.15, -0.15}) {
    Vec cand{mid[0] + s * 0.5 * dn * perp[0], mid[1] + s * 0.5 * dn * perp[1]};
    if (!orbit_bounded(map, nullptr, cand, 300, guard)) continue;
    if (inv.valid && !orbit_bounded(map, &inv, cand, 300, guard)) continue;
    a0 = cand;
    found = true;
    break;
  }
  if (!found)
    throw_domain(ErrorCode::NotACircle,
                 "trace_unstable_circle: no bounded heteroclinic seed found");

  Vec a1(2), tmp(2);
  map.eval_piece(a0[0] < 0.0 ? 'L' : 'R', a0.data(), tmp.data());
  map.eval_piece(tmp[0] < 0.0 ? 'L' : 'R', tmp.data(), a1.data());

  std::vector<std::pair<Vec, Vec>> pairs;
  pairs.reserve(static_cast<size_t>(chord_points) * iterations * 2);
  Vec y(2);
  for (int k = 0; k < chord_points; ++k) {
    double s = static_cast<double>(k) / chord_points;
    Vec seed{a0[0] + s * (a1[0] - a0[0]), a0[1] + s * (a1[1] - a0[1])};
    Vec x = seed;
    for (int it = 0; it < iterations; ++it) {
      map.eval_piece(x[0] < 0.0 ? 'L' : 'R', x.data(), y.data());
      if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || norm_inf(y) > guard) break;
      pairs.emplace_back(x, y);
      std::swap(x, y);
    }
    if (inv.valid) {
      x = seed;
      for (int it = 0; it < iterations; ++it) {
        Vec w = inv.apply(x);
        if (!std::isfinite(w[0]) || !std::isfinite(w[1]) || norm_inf(w) > guard) break;
        pairs.emplace_back(w, x);
        x = w;
      }
    }
  }
  pairs.emplace_back(fl.point, fl.point);
  pairs.emplace_back(fr.point, fr.point);
  return pairs;
}

CircleModel analyze_unstable_circle(const PWLMap& map) {
  auto pairs = trace_unstable_circle(map);
  auto [fl, fr] = fixed_points(map);

  // The curve can pinch thin along the heteroclinic connection, so the
  // parametrization center is searched: near-fixed-point candidates first
  // (the arcs spread apart there), then the midpoint and a coarse grid.
  std::vector<Vec> centers;
  Vec dir{fr.point[0] - fl.point[0], fr.point[1] - fl.point[1]};
  double dn = std::hypot(dir[0], dir[1]);
  for (double r : {0.05, 0.1, 0.2, 0.35}) {
    centers.push_back(Vec{fl.point[0] + r * dir[0], fl.point[1] + r * dir[1]});
    centers.push_back(Vec{fr.point[0] - r * dir[0], fr.point[1] - r * dir[1]});
  }
  centers.push_back(Vec{fl.point[0] + 0.5 * dir[0], fl.point[1] + 0.5 * dir[1]});
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& pr : pairs) {
    xmin = std::min(xmin, pr.first[0]);
    xmax = std::max(xmax, pr.first[0]);
    ymin = std::min(ymin, pr.first[1]);
    ymax = std::max(ymax, pr.first[1]);
  }
  for (int gx = 0; gx < 7; ++gx)
    for (int gy = 0; gy < 7; ++gy)
      centers.push_back(Vec{xmin + (xmax - xmin) * (gx + 0.5) / 7.0,
                            ymin + (ymax - ymin) * (gy + 0.5) / 7.0});
  (void)dn;

  std::string last_error = "no valid center";
  for (const auto& center : centers) {
    try {
      CircleModel model = circle_model_from_pairs(pairs, center, 2e-4, 0, 64);
      if (model.degree == 1 || model.degree == -1) return model;
      last_error = "degree not +-1 from center search";
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw_domain(ErrorCode::NotACircle,
               "analyze_unstable_circle: " + last_error);
}

std::pair<long, long> best_rational(double x, long max_den) {
  if (max_den < 1) throw_domain(ErrorCode::BadInput, "best_rational: max_den >= 1");
  x -= std::floor(x);
  long p_prev = 1, q_prev = 0;  // convergent p_{-1}/q_{-1}
  long p_cur = 0, q_cur = 1;    // a0 = 0 for x in [0,1)
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    if (frac < 1e-15) break;
    double inv = 1.0 / frac;
    if (inv > 1e15) break;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    long p_next = a * p_cur + p_prev;
    long q_next = a * q_cur + q_prev;
    if (q_next > max_den) {
      // best semiconvergent still within the denominator bound
      long k = (max_den - q_prev) / q_cur;
      long ps = k * p_cur + p_prev;
      long qs = k * q_cur + q_prev;
      if (qs >= 1 &&
          std::fabs(x - static_cast<double>(ps) / static_cast<double>(qs)) <
              std::fabs(x - static_cast<double>(p_cur) / static_cast<double>(q_cur)))
        return {ps, qs};
      return {p_cur, q_cur};
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return {p_cur, q_cur};
}

}  // namespace pwl
