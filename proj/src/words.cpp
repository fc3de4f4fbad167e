#include "pwl/words.hpp"

#include <algorithm>
#include <numeric>

#include "pwl/error.hpp"

namespace pwl {

namespace {
constexpr int kMaxClassifyLength = 64;

int positive_mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}
}  // namespace

Word::Word(std::string_view symbols) : s_(symbols) {
  if (s_.empty()) throw_domain(ErrorCode::BadInput, "word must be non-empty");
  for (char c : s_)
    if (c != kSymbolL && c != kSymbolR)
      throw_domain(ErrorCode::BadInput, "word symbols must be L or R");
}

Word Word::rotational(int ell, int m, int p) {
  if (p < 2 || m < 1 || m >= p || ell < 1 || ell >= p)
    throw_domain(ErrorCode::BadInput, "rotational word needs 1 <= ell < p and 1 <= m < p");
  if (std::gcd(m, p) != 1)
    throw_domain(ErrorCode::NotCoprime, "rotational word needs gcd(m,p) = 1");
  std::string s(static_cast<size_t>(p), kSymbolR);
  for (int i = 0; i < p; ++i)
    if (static_cast<long long>(i) * m % p < ell) s[static_cast<size_t>(i)] = kSymbolL;
  return Word(s);
}

Word Word::shifted(int i) const {
  const int p = length();
  const int k = positive_mod(i, p);
  std::string s(s_.begin() + k, s_.end());
  s.append(s_.begin(), s_.begin() + k);
  return Word(s);
}

Word Word::flipped(int k) const {
  const int p = length();
  const int i = positive_mod(k, p);
  std::string s(s_);
  s[static_cast<size_t>(i)] = (s[static_cast<size_t>(i)] == kSymbolL) ? kSymbolR : kSymbolL;
  return Word(s);
}

int Word::count_l() const {
  return static_cast<int>(std::count(s_.begin(), s_.end(), kSymbolL));
}

bool Word::all_same() const {
  return std::all_of(s_.begin(), s_.end(), [&](char c) { return c == s_[0]; });
}

Word Word::canonical_rotation() const {
  Word best = *this;
  for (int i = 1; i < length(); ++i) {
    Word cand = shifted(i);
    if (cand.str() < best.str()) best = cand;
  }
  return best;
}

int mult_inverse(int m, int p) {
  if (p < 2 || m < 1 || m >= p)
    throw_domain(ErrorCode::BadInput, "mult_inverse needs 1 <= m < p, p >= 2");
  if (std::gcd(m, p) != 1)
    throw_domain(ErrorCode::NotCoprime, "mult_inverse needs gcd(m,p) = 1");
  for (int d = 1; d < p; ++d)
    if (static_cast<long long>(m) * d % p == 1) return d;
  throw_internal("mult_inverse: no inverse found for coprime pair");
}

bool is_shift_of(const Word& a, const Word& b) {
  if (a.length() != b.length()) return false;
  const int p = a.length();
  for (int i = 0; i < p; ++i) {
    bool match = true;
    for (int k = 0; k < p && match; ++k)
      if (a.at(k) != b.at((k + i) % p)) match = false;
    if (match) return true;
  }
  return false;
}

std::optional<RotationalParams> classify_rotational(const Word& w) {
  const int p = w.length();
  if (p > kMaxClassifyLength)
    throw_domain(ErrorCode::BadInput, "classify_rotational supports lengths up to 64");
  if (p < 2) return std::nullopt;
  const int ell = w.count_l();
  if (ell == 0 || ell == p) return std::nullopt;
  for (int m = 1; m < p; ++m) {
    if (std::gcd(m, p) != 1) continue;
    Word f = Word::rotational(ell, m, p);
    for (int shift = 0; shift < p; ++shift) {
      bool match = true;
      for (int k = 0; k < p && match; ++k)
        if (w.at(k) != f.at((k + shift) % p)) match = false;
      if (match) {
        RotationalParams r;
        r.ell = ell;
        r.m = m;
        r.p = p;
        r.shift = shift;
        r.d = mult_inverse(m, p);
        return r;
      }
    }
  }
  return std::nullopt;
}

std::vector<int> rotational_flip_set(const RotationalParams& params) {
  if (params.ell < 2 || params.ell > params.p - 2)
    throw_domain(ErrorCode::BadInput, "rotational_flip_set needs 2 <= ell <= p-2");
  std::vector<int> js = {0, params.ell - 1, params.ell, params.p - 1};
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  return js;
}

Word parse_word_spec(std::string_view spec) {
  if (spec.size() > 2 && (spec[0] == 'F' || spec[0] == 'f') && spec[1] == '[' &&
      spec.back() == ']') {
    std::string inner(spec.substr(2, spec.size() - 3));
    int vals[3];
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      size_t comma = (i < 2) ? inner.find(',', pos) : inner.size();
      if (comma == std::string::npos)
        throw_domain(ErrorCode::BadInput, "word spec: expected F[ell,m,p]");
      try {
        vals[i] = std::stoi(inner.substr(pos, comma - pos));
      } catch (const std::exception&) {
        throw_domain(ErrorCode::BadInput, "word spec: bad integer in F[ell,m,p]");
      }
      pos = comma + 1;
    }
    return Word::rotational(vals[0], vals[1], vals[2]);
  }
  return Word(spec);
}

}  // namespace pwl
