#pragma once

#include <map>
#include <string>
#include <vector>

#include "subnormal/bigint.hpp"
#include "subnormal/word.hpp"

namespace subnormal {

// A reduced word over x, y written in syllables
//   (x^{k_0}) y^{l_1} x^{k_1} ... x^{k_{s-1}} y^{l_s} (x^{k_s}).
// The case tag records which optional end syllables are present:
//   'a': k_0 = 0, k_s != 0     'b': k_0 != 0, k_s = 0
//   'c': k_0 = 0, k_s = 0      'd': k_0 != 0, k_s != 0
// Words without y get the tag '0' and s = 0.
struct SyllableProfile {
  int n1 = 0;      // x-letters
  int n2 = 0;      // y-letters
  int s = 0;       // y-syllables
  int sx = 0;      // x-syllables
  int s_plus = 0;  // positive x-syllables
  int n_x = 0;     // letters x
  int n_X = 0;     // letters x^{-1}
  char tag = '0';
  std::vector<int> y_exponents;  // l_1, ..., l_s

  auto operator<=>(const SyllableProfile&) const = default;
};

SyllableProfile profile_of(const Word& w);

// Number of x-syllables for s y-syllables in a case.
int x_syllables(int s, char tag);

// Reduced words with n1 x-letters, n2 y-letters and s y-syllables in the
// given case: 2^{s + sx} comp(n1, sx) comp(n2, s); case 'a' is
// 2^{2s} C(n1-1, s-1) C(n2-1, s-1). Throws InvalidInput for s < 1,
// negative counts or an unknown tag.
BigInt count_words_fixed_profile(int n1, int n2, int s, char tag = 'a');

// The cell relies on comp(0, 0) = 1, i.e. on C(-1, -1) = 1.
bool fixed_profile_is_degenerate(int n1, int n2, int s, char tag = 'a');

// Words with fixed y-syllables (exponents and case), s x-syllables of which
// s_plus are positive, using n_x letters x and n_X letters x^{-1}:
//   C(s, s_plus) C(n_x - 1, s_plus - 1) C(n_X - 1, s - s_plus - 1),
// with the compositions convention for the boundary binomials.
BigInt scheme_size(int s, int s_plus, int n_x, int n_X);
bool scheme_is_degenerate(int s, int s_plus, int n_x, int n_X);

// C(s + t, s_plus + t) C(n_x - 1, s_plus + t - 1) C(n_X - 1, s - s_plus - 1).
BigInt lifted_scheme_size(int s, int s_plus, int n_x, int n_X, int t);

// prod_{i=1..t} (s_plus + i)/(s + i) * prod_{i=1..t} (s_plus + i - 1)/(n_x - s_plus - i + 1).
// Throws DomainError when a denominator vanishes.
Rational scheme_ratio_product(int s, int s_plus, int n_x, int t);

// Every reduced word of length n over x, y, classified.
struct ProfileOracle {
  int n = 0;
  BigInt total = 0;
  // (tag, n1, n2, s) -> count
  std::map<std::tuple<char, int, int, int>, BigInt> by_profile;
  // (tag, y exponents, s_plus, n_x, n_X) -> count
  std::map<std::tuple<char, std::vector<int>, int, int, int>, BigInt> by_scheme;
};
ProfileOracle brute_profile_oracle(int n);

struct FormulaCheck {
  std::string equation;  // "partition", "profile", "scheme", "lifted", "ratio"
  std::string cell;
  std::string formula;
  std::string oracle;
  bool pass = false;
  bool degenerate = false;
};
std::vector<FormulaCheck> formulas_check(int nmax);

// Case-(a) mass by s at length n, index s.
std::vector<BigInt> case_a_mass_by_s(const ProfileOracle& oracle);

}  // namespace subnormal
