#pragma once

#include <vector>

#include "subnormal/search.hpp"
#include "subnormal/table.hpp"
#include "subnormal/word.hpp"

namespace subnormal {

// The shortest Schreier transversal T of N_level, described over
// H = N_{level-1}: the reduced words with no prefix in H followed by x^{+-1}.
struct TransversalSpec {
  int rank = 2;
  int level = 1;
};

bool is_in_T(const Word& w, const TransversalSpec& S);

// f(n) = #{w in T : |w| <= n}. Exact, with spherical counts alongside.
CountTable cogrowth_table(const TransversalSpec& S, int nmax, const SearchOptions& options = {});

// Same table for rank 2, level 2 by a DP over (sigma_y of the prefix, last
// letter); an x-letter is forbidden whenever sigma_y = 0.
CountTable cogrowth_dp_level2(int nmax);

// f(n) sqrt(n) / (2m-1)^n, computed from the exact count.
double normalized_cogrowth(const BigInt& f, int n, int rank);

TextTable cogrowth_text(const CountTable& table, int rank);

// One block of the factorization of a word of T+ at its returns to the
// axis:  y^{+-k} core y^{-+l}. The final block may be open (no return),
// in which case falling = 0 and the core is everything after the rise.
struct FactBlock {
  int rising = 0;
  Word core;
  int falling = 0;
  int orientation = 1;  // +1 when the block rises with y, -1 with Y
  bool closed = true;

  bool operator==(const FactBlock&) const = default;
};

// Rank 2 words only.
bool in_Tplus(const Word& w);
bool in_Tminus(const Word& w);
bool in_U(const Word& w);   // every prefix has sigma_y >= 0
bool in_S(const Word& w);   // axis returns are followed by a horizontal run and a crossing
bool in_S_prime(const Word& w);  // in_S and the first y-letter is y

// y <-> Y, x fixed.
Word bar(const Word& w);

// Throws DomainError unless w is in T+.
std::vector<FactBlock> tplus_factorize(const Word& w);

// Number of i >= 1 such that the prefix of length i has sigma_y = 0 and
// ends with y^{+-1}.
int crossing_number(const Word& w);

// Number of changes of half-plane along the walk of w (axis returns not
// followed by a switch of side are not counted).
int sign_changes(const Word& w);

// Mirrors every lower excursion of the walk; requires w in S_n.
Word reflect(const Word& w);

// Deletes the first letter of every lower piece and the last letter of
// every lower piece but a final one; requires w in T+. The result has length
// |w| - sign_changes(w).
Word bridge_lift(const Word& w);

}  // namespace subnormal
