#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pwl/error.hpp"
#include "pwl/matrixcore.hpp"
#include "test_util.hpp"

using namespace pwl;
using testutil::Rng;

namespace {

Mat random_mat(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  Mat a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = rng.uniform(lo, hi);
  return a;
}

// Companion matrix of the monic polynomial with the given roots; the roots
// are an independent oracle for eigen_moduli.
Mat companion_from_roots(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> coeff = {1.0};
  for (auto r : roots) {
    std::vector<std::complex<double>> next(coeff.size() + 1, 0.0);
    for (size_t i = 0; i < coeff.size(); ++i) {
      next[i] += coeff[i];
      next[i + 1] -= coeff[i] * r;
    }
    coeff = next;
  }
  const int n = static_cast<int>(roots.size());
  Mat c(n);
  for (int i = 0; i + 1 < n; ++i) c.at(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) c.at(n - 1, j) = -coeff[static_cast<size_t>(n - j)].real();
  return c;
}

}  // namespace

TEST_CASE("determinant closed forms and LU") {
  CHECK(determinant(Mat::identity(1)) == doctest::Approx(1.0));
  CHECK(determinant(Mat::identity(4)) == doctest::Approx(1.0));
  Mat a(2, {1.444, -1.0, 1.1, 1.0});
  CHECK(determinant(a) == doctest::Approx(2.544).epsilon(1e-14));
  Mat dup(3, {1, 2, 3, 1, 2, 3, 0, 1, 4});
  CHECK(determinant(dup) == doctest::Approx(0.0));
  Mat dup5(5);
  Rng rng(7);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) dup5.at(i, j) = rng.uniform(-1, 1);
  for (int j = 0; j < 5; ++j) dup5.at(3, j) = dup5.at(1, j);
  CHECK(std::fabs(determinant(dup5)) < 1e-12);
}

TEST_CASE("determinant is multiplicative") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = rng.integer(1, 6);
    Mat a = random_mat(rng, n);
    Mat b = random_mat(rng, n);
    double lhs = determinant(a * b);
    double rhs = determinant(a) * determinant(b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("adjugate closed forms") {
  Mat a(2, {1.0, 2.0, 3.0, 4.0});
  Mat adj = adjugate(a);
  CHECK(adj.at(0, 0) == doctest::Approx(4.0));
  CHECK(adj.at(0, 1) == doctest::Approx(-2.0));
  CHECK(adj.at(1, 0) == doctest::Approx(-3.0));
  CHECK(adj.at(1, 1) == doctest::Approx(1.0));
  for (int n = 1; n <= 5; ++n) {
    Mat id = adjugate(Mat::identity(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(id.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("adjugate of random 3x3 matches det * inverse") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = random_mat(rng, 3);
    double det = determinant(a);
    if (std::fabs(det) < 1e-3) continue;
    Mat adj = adjugate(a);
    Mat inv = inverse(a);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(adj.at(i, j) == doctest::Approx(det * inv.at(i, j)).epsilon(1e-9));
  }
}

TEST_CASE("A * adj(A) = det(A) * I for n <= 6") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.integer(1, 6);
    Mat a = random_mat(rng, n);
    double det = determinant(a);
    Mat lhs = a * adjugate(a);
    Mat rhs = adjugate(a) * a;
    double scale = std::max(1.0, std::fabs(det));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double want = (i == j) ? det : 0.0;
        CHECK(std::fabs(lhs.at(i, j) - want) < 1e-9 * scale);
        CHECK(std::fabs(rhs.at(i, j) - want) < 1e-9 * scale);
      }
  }
}

TEST_CASE("adjugate of a singular matrix stays finite and consistent") {
  // rank-deficient 5x5 exercises the cofactor fallback
  Mat a(5);
  Rng rng(23);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a.at(i, j) = rng.uniform(-1, 1);
  for (int j = 0; j < 5; ++j) a.at(4, j) = a.at(0, j) + a.at(1, j);
  Mat adj = adjugate(a);
  CHECK(adj.all_finite());
  Mat prod = a * adj;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(std::fabs(prod.at(i, j)) < 1e-9);
}

TEST_CASE("eigen moduli: quadratic-formula cases") {
  Mat complex_pair(2, {-0.444, 1.0, -1.1, 0.0});
  auto mods = eigen_moduli(complex_pair);
  CHECK(mods[0] == doctest::Approx(std::sqrt(1.1)).epsilon(1e-12));
  CHECK(mods[1] == doctest::Approx(std::sqrt(1.1)).epsilon(1e-12));

  Mat diag(2, {0.5, 0.0, 0.0, -0.25});
  mods = eigen_moduli(diag);
  CHECK(mods[0] == doctest::Approx(0.5));
  CHECK(mods[1] == doctest::Approx(0.25));

  Mat fig6_left(2, {0.3, 1.0, 1.8, 0.0});
  mods = eigen_moduli(fig6_left);
  CHECK(mods[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mods[1] == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("companion 2x2 matches quadratic roots") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    double tau = rng.uniform(-2, 2);
    double delta = rng.uniform(-2, 2);
    Mat comp(2, {tau, 1.0, -delta, 0.0});
    auto mods = eigen_moduli(comp);
    double disc = tau * tau - 4 * delta;
    double m0, m1;
    if (disc >= 0) {
      double r1 = 0.5 * (tau + std::sqrt(disc));
      double r2 = 0.5 * (tau - std::sqrt(disc));
      m0 = std::max(std::fabs(r1), std::fabs(r2));
      m1 = std::min(std::fabs(r1), std::fabs(r2));
    } else {
      m0 = m1 = std::sqrt(delta);
    }
    CHECK(mods[0] == doctest::Approx(m0).epsilon(1e-12));
    CHECK(mods[1] == doctest::Approx(m1).epsilon(1e-12));
  }
}

TEST_CASE("QR eigenvalues vs companion-matrix root oracle, n = 3..6") {
  Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.integer(3, 6);
    std::vector<std::complex<double>> roots;
    while (static_cast<int>(roots.size()) < n) {
      if (n - static_cast<int>(roots.size()) >= 2 && rng.unit() < 0.4) {
        double re = rng.uniform(-1.5, 1.5);
        double im = rng.uniform(0.1, 1.5);
        roots.emplace_back(re, im);
        roots.emplace_back(re, -im);
      } else {
        roots.emplace_back(rng.uniform(-1.5, 1.5), 0.0);
      }
    }
    Mat c = companion_from_roots(roots);
    auto mods = eigen_moduli(c);
    std::vector<double> want;
    for (auto r : roots) want.push_back(std::abs(r));
    std::sort(want.begin(), want.end(), std::greater<double>());
    REQUIRE(mods.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i)
      CHECK(mods[i] == doctest::Approx(want[i]).epsilon(1e-7));
  }
}

TEST_CASE("solve and inverse") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.integer(1, 6);
    Mat a = random_mat(rng, n);
    if (std::fabs(determinant(a)) < 1e-3) continue;
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = rng.uniform(-2, 2);
    Vec x = solve(a, b);
    Vec ax = matvec(a, x);
    for (int i = 0; i < n; ++i) CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-9));
  }
  Mat sing(2, {1, 2, 2, 4});
  CHECK_THROWS_AS(solve(sing, Vec{1, 1}), Error);
}

TEST_CASE("dimension limits") {
  CHECK_THROWS_AS(eigen_moduli(Mat::identity(13)), Error);
  CHECK_THROWS_AS(Mat(0), Error);
}
