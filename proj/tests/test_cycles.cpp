#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>
#include <doctest.h>

#include <cmath>

#include "pwl/cycles.hpp"
#include "pwl/error.hpp"
#include "test_util.hpp"

using namespace pwl;
using testutil::Rng;

namespace {

PWLMap random_map(Rng& rng, int n) {
  Mat al(n), ar(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      al.at(i, j) = rng.uniform(-2, 2);
      ar.at(i, j) = (j == 0) ? rng.uniform(-2, 2) : al.at(i, j);
    }
  Vec b(n);
  for (int i = 0; i < n; ++i) b[i] = rng.uniform(-2, 2);
  return PWLMap(al, ar, b);
}

Word random_word(Rng& rng, int p) {
  std::string s;
  for (int i = 0; i < p; ++i) s.push_back(rng.unit() < 0.5 ? 'L' : 'R');
  return Word(s);
}

}  // namespace

TEST_CASE("word matrices for single symbols and LR") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);

  WordMatrices wl = word_matrices(m, Word("L"));
  CHECK(wl.m == m.left());
  CHECK(wl.p == Mat::identity(2));

  WordMatrices wlr = word_matrices(m, Word("LR"));
  Mat want_m = m.right() * m.left();
  Mat want_p = m.right() + Mat::identity(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(wlr.m.at(i, j) == doctest::Approx(want_m.at(i, j)));
      CHECK(wlr.p.at(i, j) == doctest::Approx(want_p.at(i, j)));
    }
}

TEST_CASE("P has no first-symbol factor: flipping X_0 leaves it unchanged") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    PWLMap m = random_map(rng, rng.integer(2, 3));
    Word x = random_word(rng, rng.integer(1, 8));
    WordMatrices a = word_matrices(m, x);
    WordMatrices b = word_matrices(m, x.flipped(0));
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        CHECK(a.p.at(i, j) == doctest::Approx(b.p.at(i, j)));
  }
}

TEST_CASE("M matches the direct left-product") {
  Rng rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    PWLMap m = random_map(rng, 2);
    Word x = random_word(rng, rng.integer(1, 10));
    WordMatrices wm = word_matrices(m, x);
    Mat direct = Mat::identity(2);
    for (int i = 0; i < x.length(); ++i) direct = m.piece(x.at(i)) * direct;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(wm.m.at(i, j) == doctest::Approx(direct.at(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("single-symbol cycle recovers the fixed point") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);
  Cycle c = solve_cycle(m, Word("R"));
  CHECK(c.points[0][0] == doctest::Approx(1.0 / 2.544).epsilon(1e-9));
  CHECK(c.points[0][1] == doctest::Approx(-1.1 / 2.544).epsilon(1e-9));
  CHECK(c.admissibility == Admissibility::Admissible);
  CHECK_FALSE(c.stable);
  CHECK(c.multipliers[0] == doctest::Approx(std::sqrt(1.1)).epsilon(1e-9));
}

TEST_CASE("stable and saddle period-7 cycles of the example map") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);

  Cycle stable = solve_cycle(m, Word::rotational(2, 2, 7));
  CHECK(stable.admissibility == Admissibility::Admissible);
  CHECK(stable.stable);
  CHECK(stable.multipliers[0] < 1.0);

  Cycle saddle = solve_cycle(m, Word::rotational(1, 2, 7));
  CHECK(saddle.admissibility == Admissibility::Admissible);
  CHECK_FALSE(saddle.stable);
  CHECK(saddle.multipliers[0] > 1.0);
}

TEST_CASE("first component via adjugate identity") {
  PWLMap m = PWLMap::pws2d(-0.444, -0.6);
  double x1 = first_component_adjugate(m, Word("R"));
  CHECK(x1 == doctest::Approx(1.0 / 2.544).epsilon(1e-12));

  WordMatrices wm = word_matrices(m, Word("R"));
  CHECK(wm.det_p == doctest::Approx(1.0));
  CHECK(wm.det_i_minus_m == doctest::Approx(2.544).epsilon(1e-12));

  // single-L word reduces to the fixed point formula
  double l1 = first_component_adjugate(m, Word("L"));
  CHECK(l1 == doctest::Approx(1.0 / 1.544).epsilon(1e-12));
}

TEST_CASE("adjugate identity agrees with the direct solve on random instances") {
  Rng rng(107);
  int tested = 0;
  while (tested < 300) {
    PWLMap m = random_map(rng, rng.integer(2, 3));
    Word x = random_word(rng, rng.integer(1, 10));
    WordMatrices wm = word_matrices(m, x);
    if (std::fabs(wm.det_i_minus_m) < 1e-6) continue;
    double via_adj = first_component_adjugate(m, x);
    Cycle c = solve_cycle(m, x);
    double direct = c.points[0][0];
    CHECK(std::fabs(via_adj - direct) <= 1e-9 * std::max({1.0, std::fabs(via_adj), std::fabs(direct)}));
    ++tested;
  }
}

TEST_CASE("no unique cycle when det(I - M) vanishes") {
  Mat id = Mat::identity(2);
  PWLMap m(id, id, Vec{1, 1});
  CHECK_THROWS_AS(solve_cycle(m, Word("LR")), Error);
  try {
    solve_cycle(m, Word("LR"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoUniqueCycle);
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("admissibility_of verdicts") {
  Word lr("LR");
  std::vector<Vec> good = {{-1.0, 0.0}, {1.0, 0.0}};
  CHECK(admissibility_of(good, lr) == Admissibility::Admissible);
  std::vector<Vec> bad = {{1.0, 0.0}, {1.0, 0.0}};
  CHECK(admissibility_of(bad, lr) == Admissibility::Virtual);
  std::vector<Vec> boundary = {{0.0, 0.0}, {1.0, 0.0}};
  CHECK(admissibility_of(boundary, lr) == Admissibility::Boundary);
  CHECK_THROWS_AS(admissibility_of(good, Word("LRR")), Error);
}

TEST_CASE("shift covariance of cycles") {
  Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    PWLMap m = random_map(rng, 2);
    int p = rng.integer(2, 9);
    Word x = random_word(rng, p);
    WordMatrices wm = word_matrices(m, x);
    if (std::fabs(wm.det_i_minus_m) < 1e-4) continue;
    std::optional<Cycle> base;
    try {
      base.emplace(solve_cycle(m, x));
    } catch (const Error&) {
      continue;
    }
    for (int shift : {1, p / 2, p - 1}) {
      Cycle rot = solve_cycle(m, x.shifted(shift));
      CHECK(rot.mats.det_i_minus_m ==
            doctest::Approx(base->mats.det_i_minus_m).epsilon(1e-9));
      CHECK(rot.multipliers[0] == doctest::Approx(base->multipliers[0]).epsilon(1e-8));
      double scale = 1.0;
      for (const auto& pt : base->points) scale = std::max(scale, norm_inf(pt));
      for (int i = 0; i < p; ++i)
        for (int c = 0; c < 2; ++c)
          CHECK(std::fabs(rot.points[i][c] - base->points[(i + shift) % p][c]) <
                1e-7 * scale);
    }
  }
}

TEST_CASE("cycle verdict matches solve_cycle") {
  Rng rng(113);
  CycleWorkspace ws;
  for (int trial = 0; trial < 40; ++trial) {
    PWLMap m = random_map(rng, 2);
    Word x = random_word(rng, rng.integer(1, 10));
    CycleVerdict v = cycle_verdict(m, x, ws);
    if (!v.unique) continue;
    Cycle c = solve_cycle(m, x);
    CHECK(v.admissibility == c.admissibility);
    CHECK(v.stable == c.stable);
    CHECK(v.max_modulus == doctest::Approx(c.multipliers[0]));
    CHECK(v.det_i_minus_m == doctest::Approx(c.mats.det_i_minus_m));
  }
}
