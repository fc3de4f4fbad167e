#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "pwl/error.hpp"
#include "pwl/words.hpp"

using namespace pwl;

TEST_CASE("mult_inverse") {
  CHECK(mult_inverse(2, 7) == 4);
  for (int p = 2; p <= 20; ++p) CHECK(mult_inverse(1, p) == 1);
  CHECK(mult_inverse(3, 10) == 7);  // exhaustive: 3*7 = 21 = 2*10 + 1
  CHECK_THROWS_AS(mult_inverse(4, 10), Error);
  CHECK_THROWS_AS(mult_inverse(0, 5), Error);
  CHECK_THROWS_AS(mult_inverse(5, 5), Error);
}

TEST_CASE("rotational word construction") {
  CHECK(Word::rotational(2, 2, 7).str() == "LRRRLRR");
  CHECK(Word::rotational(1, 2, 7).str() == "LRRRRRR");
  CHECK(Word::rotational(3, 1, 9).str() == "LLLRRRRRR");
  CHECK_THROWS_AS(Word::rotational(0, 1, 5), Error);
  CHECK_THROWS_AS(Word::rotational(5, 1, 5), Error);
  CHECK_THROWS_AS(Word::rotational(2, 2, 6), Error);  // gcd(2,6) != 1
}

TEST_CASE("shift") {
  CHECK(Word("LLLRR").shifted(1).str() == "LLRRL");
  Word x("LRRRLRR");
  CHECK(x.shifted(7) == x);
  CHECK(x.shifted(4).str() == "LRRLRRR");
  CHECK(x.shifted(-3) == x.shifted(4));
}

TEST_CASE("flip") {
  CHECK(Word("LLLRR").flipped(2).str() == "LLRRR");
  Word x("LRRRLRR");
  CHECK(x.flipped(4).str() == "LRRRRRR");
  CHECK(x.flipped(4).flipped(4) == x);
  for (int k = 0; k < 7; ++k) CHECK(x.flipped(k).flipped(k) == x);
}

TEST_CASE("classify_rotational") {
  auto r = classify_rotational(Word("LRRRLRR"));
  REQUIRE(r.has_value());
  CHECK(r->ell == 2);
  CHECK(r->m == 2);
  CHECK(r->p == 7);
  CHECK(r->shift == 0);
  CHECK(r->d == 4);

  CHECK_FALSE(classify_rotational(Word("LLRRRRLRR")).has_value());

  auto lr = classify_rotational(Word("LR"));
  REQUIRE(lr.has_value());
  CHECK(lr->ell == 1);
  CHECK(lr->m == 1);
  CHECK(lr->p == 2);
  CHECK(lr->shift == 0);

  CHECK_FALSE(classify_rotational(Word("L")).has_value());
  CHECK_FALSE(classify_rotational(Word("RRRR")).has_value());
  CHECK_FALSE(classify_rotational(Word("LLLL")).has_value());
}

TEST_CASE("classification round-trips construction up to p = 12") {
  for (int p = 2; p <= 12; ++p)
    for (int m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      for (int ell = 1; ell < p; ++ell) {
        Word f = Word::rotational(ell, m, p);
        for (int shift = 0; shift < p; shift += (p > 6 ? 3 : 1)) {
          auto r = classify_rotational(f.shifted(shift));
          REQUIRE(r.has_value());
          CHECK(r->ell == ell);
          CHECK(r->p == p);
          // smallest-m tie break: the reported word must be shift-equivalent
          Word back = Word::rotational(r->ell, r->m, r->p);
          CHECK(is_shift_of(f, back));
          CHECK(r->m <= m);
        }
      }
    }
}

TEST_CASE("L count of rotational word equals ell and is shift invariant") {
  for (int p = 2; p <= 20; ++p)
    for (int m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      for (int ell = 1; ell < p; ++ell) {
        Word f = Word::rotational(ell, m, p);
        CHECK(f.count_l() == ell);
        CHECK(f.shifted(ell + m).count_l() == ell);
      }
    }
}

TEST_CASE("rotational flip set") {
  auto r = classify_rotational(Word::rotational(2, 2, 7));
  REQUIRE(r.has_value());
  auto js = rotational_flip_set(*r);
  CHECK(js == std::vector<int>({0, 1, 2, 6}));
  // flip indices j*d mod p with d = 4: {0, 4, 1, 3}
  std::set<int> flip_indices;
  for (int j : js) flip_indices.insert(j * r->d % r->p);
  CHECK(flip_indices == std::set<int>({0, 1, 3, 4}));
  // j = ell - 1 = 1 flips index 4 and yields F[1,2,7]
  CHECK(Word::rotational(2, 2, 7).flipped(4) == Word::rotational(1, 2, 7));
  // j = ell = 2 flips index 1 and yields F[3,2,7]
  CHECK(Word::rotational(2, 2, 7).flipped(1) == Word::rotational(3, 2, 7));

  RotationalParams bad{1, 2, 7, 0, 4};
  CHECK_THROWS_AS(rotational_flip_set(bad), Error);
}

TEST_CASE("flips outside the j-set leave the same-m ell neighbourhood") {
  // X = F[3,2,7]: excluded j are {1, 4, 5}
  auto r = classify_rotational(Word::rotational(3, 2, 7));
  REQUIRE(r.has_value());
  Word x = Word::rotational(3, 2, 7);
  for (int j : {1, 4, 5}) {
    Word flipped = x.flipped(j * r->d % r->p);
    CHECK_FALSE(is_shift_of(flipped, Word::rotational(2, 2, 7)));
    CHECK_FALSE(is_shift_of(flipped, Word::rotational(4, 2, 7)));
  }
  for (int j : rotational_flip_set(*r)) {
    Word flipped = x.flipped(j * r->d % r->p);
    bool neighbour = is_shift_of(flipped, Word::rotational(2, 2, 7)) ||
                     is_shift_of(flipped, Word::rotational(4, 2, 7));
    CHECK(neighbour);
  }
}

TEST_CASE("indexing identity: symbol at j*d is L exactly when j < ell (p <= 12)") {
  for (int p = 2; p <= 12; ++p)
    for (int m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      int d = mult_inverse(m, p);
      for (int ell = 1; ell < p; ++ell) {
        Word f = Word::rotational(ell, m, p);
        for (int j = 0; j < p; ++j)
          CHECK((f.at(j * d % p) == 'L') == (j < ell));
      }
    }
}

TEST_CASE("shifted-flip identity, concrete instance") {
  Word x = Word::rotational(2, 2, 7);
  int d = 4, ell = 2;
  Word lhs = x.flipped(0).shifted(ell * d);
  Word rhs = x.shifted((ell - 1) * d).flipped(0);
  CHECK(lhs == rhs);
  CHECK(lhs.str() == "RRRLRRR");
}

TEST_CASE("canonical rotation") {
  CHECK(Word("RRLRRLR").canonical_rotation().str() == "LRRLRRR");
  CHECK(Word("RRRR").canonical_rotation().str() == "RRRR");
  Word x("LRRRLRR");
  for (int i = 0; i < 7; ++i)
    CHECK(x.shifted(i).canonical_rotation() == x.canonical_rotation());
}

TEST_CASE("word spec parsing") {
  CHECK(parse_word_spec("LRRRLRR").str() == "LRRRLRR");
  CHECK(parse_word_spec("F[2,2,7]").str() == "LRRRLRR");
  CHECK_THROWS_AS(parse_word_spec("F[2,2]"), Error);
  CHECK_THROWS_AS(parse_word_spec("LXR"), Error);
  CHECK_THROWS_AS(parse_word_spec(""), Error);
}

TEST_CASE("classification length limit") {
  std::string longword(65, 'L');
  longword[1] = 'R';
  CHECK_THROWS_AS(classify_rotational(Word(longword)), Error);
}
