#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwl/circlemap.hpp"
#include "pwl/cycles.hpp"
#include "pwl/error.hpp"
#include "test_util.hpp"

using namespace pwl;
using testutil::Rng;

namespace {

// rigid rotation samples (t, t + omega mod 1)
std::vector<std::pair<double, double>> rotation_samples(double omega, int count) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / count;
    s.emplace_back(t, std::fmod(t + omega, 1.0));
  }
  return s;
}

}  // namespace

TEST_CASE("degree of synthetic maps") {
  std::vector<std::pair<double, double>> ident;
  for (int i = 0; i < 100; ++i) {
    double t = i / 100.0;
    ident.emplace_back(t, t);
  }
  CHECK(degree_of(ident) == 1);

  std::vector<std::pair<double, double>> reflect;
  for (int i = 0; i < 100; ++i) {
    double t = i / 100.0;
    reflect.emplace_back(t, std::fmod(1.0 - t, 1.0));
  }
  CHECK(degree_of(reflect) == -1);

  CHECK(degree_of(rotation_samples(2.0 / 7.0, 200)) == 1);

  // doubling map has degree 2
  std::vector<std::pair<double, double>> doubling;
  for (int i = 0; i < 400; ++i) {
    double t = i / 400.0;
    doubling.emplace_back(t, std::fmod(2.0 * t, 1.0));
  }
  CHECK(degree_of(doubling) == 2);

  CHECK_THROWS_AS(degree_of({{0.0, 0.0}, {0.5, 0.5}}), Error);
}

TEST_CASE("rotation number of rigid rotations is exact as an approximant") {
  for (auto [num, den] : {std::pair<long, long>{2, 7}, {1, 4}, {3, 10}, {5, 13}}) {
    double omega = static_cast<double>(num) / den;
    auto est = rotation_number([omega](double t) { return t + omega; }, 0.1, 10000, 64);
    CHECK(est.num == num);
    CHECK(est.den == den);
    CHECK(est.value == doctest::Approx(omega).epsilon(1e-12));
  }
}

TEST_CASE("golden-mean rotation has no small-denominator lock") {
  const double omega = 0.5 * (std::sqrt(5.0) - 1.0);  // ~0.618..., irrational
  auto est = rotation_number([omega](double t) { return t + omega; }, 0.0, 10000, 12);
  CHECK(std::fabs(est.value - static_cast<double>(est.num) / est.den) > est.error_bound);
}

TEST_CASE("best rational approximants") {
  CHECK(best_rational(2.0 / 7.0, 64) == std::pair<long, long>(2, 7));
  CHECK(best_rational(0.5, 64) == std::pair<long, long>(1, 2));
  CHECK(best_rational(0.0, 64) == std::pair<long, long>(0, 1));
  CHECK(best_rational(0.2857, 7) == std::pair<long, long>(2, 7));
  CHECK(best_rational(1.0 / 3.0, 2) == std::pair<long, long>(1, 2));
  CHECK(best_rational(0.6180339887, 13) == std::pair<long, long>(8, 13));
}

TEST_CASE("ordering chain for the 2/7 rigid rotation") {
  std::vector<double> orbit;
  for (int i = 0; i < 7; ++i) orbit.push_back((2 * i % 7) / 7.0);
  OrderedOrbit oo = ordering_check(orbit, 5.0 / 7.0);
  CHECK(oo.m == 2);
  CHECK(oo.d == 4);
  CHECK(oo.s == doctest::Approx(0.0));
  CHECK(oo.p == 7);
}

TEST_CASE("ordering check error paths") {
  // p = 4 orbit with two points in [c,1): m = 2 shares a factor with p
  std::vector<double> even = {0.0, 0.3, 0.6, 0.9};
  CHECK_THROWS_AS(ordering_check(even, 0.55), Error);
  try {
    ordering_check(even, 0.55);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCoprime);
  }

  // hand-built "orbit" that cannot satisfy the chain
  std::vector<double> bad = {0.0, 0.6, 0.2, 0.4, 0.8};  // m = 2 in [0.55,1), d = 3
  bool ordering_failed = false;
  try {
    ordering_check(bad, 0.55);
  } catch (const Error& e) {
    ordering_failed = (e.code() == ErrorCode::OrderingViolated);
  }
  CHECK(ordering_failed);

  // fixed point: trivially ordered
  OrderedOrbit fp = ordering_check({0.3}, 0.5);
  CHECK(fp.p == 1);
  CHECK(fp.m == 0);
}

TEST_CASE("attractor sampling: contraction, constant orbit, divergence") {
  // beta > -1/2: stable fixed point on the right side
  PWLMap m = PWLMap::pws2d(-0.444, -0.4);
  auto [fl, fr] = fixed_points(m);
  REQUIRE(fr.stable);
  OrbitSample orbit = sample_attractor(m, Vec{0.2, 0.1}, 2000, 50);
  for (const auto& pt : orbit.points) {
    CHECK(pt[0] == doctest::Approx(fr.point[0]).epsilon(1e-8));
    CHECK(pt[1] == doctest::Approx(fr.point[1]).epsilon(1e-8));
  }
  CHECK(detect_period(orbit, 10) == 1);

  OrbitSample consts = sample_attractor(m, fr.point, 0, 10);
  for (const auto& pt : consts.points) CHECK(pt[0] == doctest::Approx(fr.point[0]));

  Mat expanding(2, {2.0, 0.0, 0.0, 2.0});
  PWLMap blow(expanding, expanding, Vec{1.0, 0.0});
  CHECK_THROWS_AS(sample_attractor(blow, Vec{1.0, 1.0}, 1000, 10), Error);
}

TEST_CASE("invariant circle of the example map: degree 1 and rotation 2/7") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);
  OrbitSample orbit = sample_attractor(m, Vec{0.1, -0.1}, 5000, 2000);
  auto period = detect_period(orbit, 64);
  REQUIRE(period.has_value());
  CHECK(*period == 7);

  CircleModel model = reconstruct_circle(orbit, Vec{0.0, -0.5});
  CHECK(model.degree == 1);
  CHECK(model.monotone);
  CHECK(model.aligned);
  CHECK(model.boundary_crossings == 2);
  CHECK(model.rotation.num == 2);
  CHECK(model.rotation.den == 7);

  // lift validity on every sample: pi(G(t)) = g(t)
  for (const auto& s : model.samples) {
    double diff = s.lift - s.g;
    CHECK(std::fabs(diff - std::round(diff)) < 1e-12);
  }
  // two-branch degree-1 lift structure with a single integer r
  int below = 0, above = 0;
  for (const auto& s : model.samples) {
    int r = static_cast<int>(std::lround(s.lift - s.g));
    if (s.t < model.c) {
      CHECK(r == model.lift_offset);
      ++below;
    } else {
      CHECK(r == model.lift_offset + 1);
      ++above;
    }
  }
  CHECK(below > 0);
  CHECK(above > 0);
}

TEST_CASE("itinerary of the stable period-7 orbit is a shift of F[2,2,7]") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);
  OrbitSample orbit = sample_attractor(m, Vec{0.1, -0.1}, 5000, 2000);
  auto period = detect_period(orbit, 64);
  REQUIRE(period.has_value());
  std::vector<Vec> cycle_pts(orbit.points.end() - *period, orbit.points.end());

  CircleModel model = reconstruct_circle(orbit, Vec{0.0, -0.5});
  Word itin = itinerary_from_circle(model, cycle_pts);
  CHECK(is_shift_of(itin, Word::rotational(2, 2, 7)));
  auto cls = classify_rotational(itin);
  REQUIRE(cls.has_value());
  CHECK(cls->ell == 2);
  CHECK(cls->m == 2);
  CHECK(cls->p == 7);

  // ordering lemma on the circle parameters, orbit order
  std::vector<double> ts;
  for (const auto& pt : cycle_pts) ts.push_back(model.param_of(pt));
  OrderedOrbit oo = ordering_check(ts, model.c);
  CHECK(oo.m == 2);
  CHECK(oo.d == 4);

  // rotation approximant agrees with the itinerary classification
  CHECK(model.rotation.num == cls->m);
  CHECK(model.rotation.den == cls->p);
}

TEST_CASE("all-R orbit yields a non-rotational word") {
  // synthetic model: circle strictly right of the manifold
  std::vector<std::pair<Vec, Vec>> pairs;
  const double cx = 2.0, cy = 0.0, r = 0.5;
  for (int i = 0; i < 360; ++i) {
    double a = 2.0 * std::numbers::pi * i / 360.0;
    double b = a + 2.0 * std::numbers::pi * 0.28;
    pairs.push_back({Vec{cx + r * std::cos(a), cy + r * std::sin(a)},
                     Vec{cx + r * std::cos(b), cy + r * std::sin(b)}});
  }
  CircleModel model = circle_model_from_pairs(pairs, Vec{cx, cy}, 1e-8);
  CHECK(model.degree == 1);
  CHECK(model.boundary_crossings == 0);
  // rigid rotation by +0.28 counterclockwise is 0.72 in the clockwise
  // parametrization
  CHECK(model.rotation.value == doctest::Approx(0.72).epsilon(1e-6));
  CHECK(model.rotation.num == 18);
  CHECK(model.rotation.den == 25);
  std::vector<Vec> orbit_pts = {Vec{2.5, 0.0}, Vec{2.0, 0.5}, Vec{1.5, 0.0}};
  Word itin = itinerary_from_circle(model, orbit_pts);
  CHECK(itin.str() == "RRR");
  CHECK_FALSE(classify_rotational(itin).has_value());
}

TEST_CASE("boundary band raises OnBoundary") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);
  OrbitSample orbit = sample_attractor(m, Vec{0.1, -0.1}, 5000, 500);
  CircleModel model = reconstruct_circle(orbit, Vec{0.0, -0.5});
  CHECK_THROWS_AS(itinerary_from_circle(model, {Vec{0.0, 1.0}}), Error);
}

TEST_CASE("stable attractors of invertible maps have degree-1 circle maps") {
  // randomized check of the degree theorem hypotheses on the pws2d family
  Rng rng(211);
  int circles = 0;
  for (int trial = 0; trial < 60; ++trial) {
    double alpha = rng.uniform(-1.4, 1.4);
    double beta = rng.uniform(-0.95, -0.52);
    PWLMap m = PWLMap::pws2d(alpha, beta);
    if (is_homeomorphism(m) != Tristate::True) continue;
    auto [fl, fr] = fixed_points(m);
    if (!fl.exists || !fr.exists) continue;
    RhoVector rho = rho_vector(m);
    if (std::fabs(rho.rho_b) < 1e-6) continue;
    OrbitSample orbit;
    try {
      orbit = sample_attractor(m, Vec{0.05, -0.05}, 4000, 1500);
    } catch (const Error&) {
      continue;  // diverged: no stable attractor here
    }
    CircleModel model;
    try {
      model = reconstruct_circle(orbit, Vec{0.0, -0.5}, 2000, 64);
    } catch (const Error&) {
      continue;  // not a circle (fixed point, multi-branch attractor, ...)
    }
    ++circles;
    CHECK(model.degree == 1);
    // admissible cycles found on a two-crossing degree-1 circle are rotational
    auto period = detect_period(orbit, 40);
    if (period && *period >= 2 && model.boundary_crossings == 2) {
      std::vector<Vec> pts(orbit.points.end() - *period, orbit.points.end());
      try {
        Word itin = itinerary_from_circle(model, pts);
        Cycle cyc = solve_cycle(m, itin);
        if (cyc.admissibility == Admissibility::Admissible)
          CHECK(classify_rotational(itin).has_value());
      } catch (const Error&) {
        // boundary-band points: skip the word checks
      }
    }
  }
  CHECK(circles >= 10);
}

TEST_CASE("unstable circle of the degree -1 example") {
  PWLMap m = PWLMap::normal_form_2d(0.3, -1.8, -0.1, -0.3);
  CircleModel model = analyze_unstable_circle(m);
  CHECK(model.degree == -1);
  CHECK(model.boundary_crossings == 2);
}
