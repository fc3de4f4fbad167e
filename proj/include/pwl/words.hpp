#ifndef PWL_WORDS_HPP
#define PWL_WORDS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwl {

// Symbols over the two-piece alphabet.
constexpr char kSymbolL = 'L';
constexpr char kSymbolR = 'R';

// Immutable word over {L,R}, 0-based indexing X_0 X_1 ... X_{p-1}.
class Word {
 public:
  explicit Word(std::string_view symbols);

  // The rotational word: symbol i is L exactly when i*m mod p < ell.
  static Word rotational(int ell, int m, int p);

  int length() const { return static_cast<int>(s_.size()); }
  char at(int i) const { return s_[static_cast<size_t>(i)]; }
  const std::string& str() const { return s_; }

  Word shifted(int i) const;   // sigma^i: rotate left by i (mod p)
  Word flipped(int k) const;   // flip symbol k mod p
  int count_l() const;
  bool all_same() const;

  // Lexicographically smallest rotation (L < R); stable dictionary key for
  // shift-equivalence classes.
  Word canonical_rotation() const;

  bool operator==(const Word& o) const { return s_ == o.s_; }
  bool operator!=(const Word& o) const { return s_ != o.s_; }

 private:
  std::string s_;
};

struct RotationalParams {
  int ell = 0;    // number of L symbols, 1 <= ell <= p-1
  int m = 0;      // rotation numerator, coprime to p
  int p = 0;      // period
  int shift = 0;  // word equals sigma^shift of the canonical rotational word
  int d = 0;      // multiplicative inverse of m mod p
};

// The unique d in {1,...,p-1} with m*d mod p = 1; rejects non-coprime pairs.
int mult_inverse(int m, int p);

// True when a is some rotation of b.
bool is_shift_of(const Word& a, const Word& b);

// Detects whether the word is a shift of a rotational word; smallest matching
// m wins when several do.  Supported for lengths up to 64.
std::optional<RotationalParams> classify_rotational(const Word& w);

// The index set {0, ell-1, ell, p-1} of flips at j*d that stay rotational
// (requires 2 <= ell <= p-2).
std::vector<int> rotational_flip_set(const RotationalParams& params);

// Accepts a literal word ("LRRRLRR") or constructor syntax ("F[2,2,7]").
Word parse_word_spec(std::string_view spec);

}  // namespace pwl

#endif
