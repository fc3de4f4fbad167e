#ifndef PWL_CIRCLEMAP_HPP
#define PWL_CIRCLEMAP_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pwl/pwlmap.hpp"
#include "pwl/words.hpp"

namespace pwl {

struct OrbitSample {
  std::vector<Vec> points;  // consecutive iterates, transient removed
  int transient_discarded = 0;
};

// Iterates the map, discards `transient` points, keeps the next `keep`.
// Throws Divergence / NonFiniteState when the orbit blows up.
OrbitSample sample_attractor(const PWLMap& map, const Vec& x0, int transient, int keep);

// Smallest p <= p_max at which the orbit tail revisits itself within the
// mode-locking tolerance; empty for quasi-periodic tails.
std::optional<int> detect_period(const OrbitSample& orbit, int p_max);

struct RotationEstimate {
  double value = 0.0;        // (G^N(t) - t)/N reduced mod 1
  long num = 0;              // best rational approximant value ~ num/den
  long den = 1;
  double error_bound = 0.0;  // 1/N
  int iterations = 0;
};

struct CircleSample {
  double t = 0.0;        // parameter of the source point
  double g = 0.0;        // parameter of its image
  double lift = 0.0;     // continued lift value G(t)
  double x1 = 0.0;       // coordinates of the source point
  double x2 = 0.0;
};

// Sampled circle map induced on an invariant closed curve, with lift data.
struct CircleModel {
  Vec center;
  std::vector<CircleSample> samples;  // sorted by t, deduplicated
  int degree = 0;
  bool monotone = false;        // lift monotone in the direction of the degree
  bool aligned = false;         // t in (0,1/2) <=> x_1 < 0
  double c = 0.0;               // g^{-1}(0); NaN when |degree| != 1
  int lift_offset = 0;          // r in the two-branch degree-1 lift split
  int boundary_crossings = 0;   // sign alternations of x_1 around the curve
  RotationEstimate rotation;    // filled for monotone degree-1 models

  // manifold-anchored reparametrization (off-manifold centers only)
  bool remap_active = false;
  double remap_a = 0.0;      // parameter of the R -> L crossing
  double remap_len_l = 0.5;  // raw-parameter length of the left arc

  double lift_at(double t) const;  // piecewise-linear interpolation of G
  double map_at(double t) const;   // g(t) = lift mod 1
  double param_of(const Vec& x) const;  // t of an ambient point
};

// Circle reconstruction from consecutive iterates (n = 2).  The default
// rotation estimate uses 1e4 lift iterations and approximant denominators
// up to 64.
CircleModel reconstruct_circle(const OrbitSample& orbit, const Vec& center,
                               int rotation_iterations = 10000, int max_den = 64);

// Same machinery for arbitrary (point, image) pairs on an invariant curve.
CircleModel circle_model_from_pairs(const std::vector<std::pair<Vec, Vec>>& pairs,
                                    const Vec& center, double dedup_tol,
                                    int rotation_iterations = 10000, int max_den = 64);

// Degree of a sampled circle map from raw (t, g(t)) samples.
int degree_of(std::vector<std::pair<double, double>> samples);

// Rotation number of a degree-1 monotone lift G.
RotationEstimate rotation_number(const std::function<double(double)>& lift, double t0,
                                 int iterations, int max_den);

struct OrderedOrbit {
  double s = 0.0;  // smallest orbit point
  int m = 0;       // points in [c, 1)
  int d = 0;       // multiplicative inverse of m mod p
  int p = 1;
};

// Verifies the spatial ordering s < g^d(s) < ... < g^{(p-1)d}(s) of a
// periodic orbit given in orbit order.  Failure signals that the degree-1
// hypothesis is violated, not a bug.
OrderedOrbit ordering_check(const std::vector<double>& orbit_ts, double c);

// L/R itinerary of a periodic orbit on the curve, in orbit order.
Word itinerary_from_circle(const CircleModel& model, const std::vector<Vec>& orbit_points);

// Best-effort tracing of an unstable invariant circle joining a repelling and
// an attracting fixed point: iterates a heteroclinic seed chord forward and
// backward, collecting (point, image) pairs whose closure is the circle.
std::vector<std::pair<Vec, Vec>> trace_unstable_circle(const PWLMap& map,
                                                       int chord_points = 500,
                                                       int iterations = 90);

// Convenience wrapper: trace + parametrize around the sample centroid (with
// a fixed-point-midpoint fallback).
CircleModel analyze_unstable_circle(const PWLMap& map);

std::pair<long, long> best_rational(double x, long max_den);

}  // namespace pwl

#endif
