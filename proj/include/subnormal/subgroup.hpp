#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "subnormal/lru_cache.hpp"
#include "subnormal/search.hpp"
#include "subnormal/table.hpp"
#include "subnormal/word.hpp"

namespace subnormal {

// Level `level` of the tower of subnormal closures of x in F_rank:
// N_0 = F, N_1 = <<x>>^F, N_l = <<x>>^{N_{l-1}}.
struct SubgroupLevel {
  int rank = 2;
  int level = 1;

  // Throws InvalidInput unless 1 <= rank <= kMaxRank and 0 <= level <= kMaxLevel.
  void validate() const;
  SubgroupLevel parent() const { return {rank, level - 1}; }
};

// One peeled conjugate v x^e v^{-1}.
struct Conjugate {
  Word conjugator;
  int exponent = 1;

  bool operator==(const Conjugate&) const = default;
};

// Result of transversal rewriting:
//   reduce(prod_i v_i x^{e_i} v_i^{-1} * residual) == input,
// with the residual the representative of N_l * input in the transversal T_l.
struct RewriteTrace {
  std::vector<Conjugate> steps;
  Word residual;
};

// The product of conjugates v x^e v^{-1}, freely reduced.
Word assemble(const std::vector<Conjugate>& factors);

// Deletes every x^{+-1} and freely reduces: the image of w in
// F/N_1 = F(x_2, ..., x_m).
Word deletion_image(const Word& w);

bool is_member(const Word& w, const SubgroupLevel& L);

// Leftmost rewriting: repeatedly write the current word as v x^{+-1} v' with
// the shortest prefix v in N_{l-1}, record (v, +-1) and continue with
// reduce(v v'). Requires level >= 1.
RewriteTrace rewrite_to_transversal(const Word& w, const SubgroupLevel& L);

// Condition 1 relative to H = N_{l-1}: no prefix v in H is followed by x^{+-1}.
bool satisfies_transversal_condition(const Word& w, const SubgroupLevel& L);

// Expresses a member of N_l in the free basis { t x t^{-1} : t in Y_l },
// Y_l = T_l cap N_{l-1}. Adjacent inverse factors are cancelled, so the
// result is the unique reduced expression. Throws NotAMember.
std::vector<Conjugate> decompose_in_basis(const Word& w, const SubgroupLevel& L);

// Rewrites v x^e v^{-1}, v in N_{l-1}, as a product of basis conjugates by
// splitting v = u x^{+-1} u' at its shortest prefix u in N_{l-1}:
//   v x v^{-1} = (u x^{+-1} u^{-1}) ((u u') x (u u')^{-1}) (u x^{-+1} u^{-1}).
std::vector<Conjugate> expand_conjugate(const Word& v, int exponent, const SubgroupLevel& L);

// Cancels adjacent factors (t, e), (t, -e) and merges nothing else.
std::vector<Conjugate> freely_reduce_factors(std::vector<Conjugate> factors);

// Is the conjugator an element of Y_l (Conditions 1 and 2, and in N_{l-1})?
bool is_basis_conjugator(const Word& t, const SubgroupLevel& L);

// Reference decision procedure: performs the leftmost rewriting literally,
// deciding N_{l-1} membership of every candidate prefix recursively. Answers
// are memoised per level in an LRU cache bounded by a byte budget; the cache
// is shared between threads and never changes answers.
class MembershipOracle {
 public:
  explicit MembershipOracle(int rank, std::size_t cache_bytes = 64u << 20);

  bool is_member(const Word& w, int level);
  RewriteTrace rewrite(const Word& w, int level);

  int rank() const { return rank_; }
  CacheStats cache_stats() const;

 private:
  int rank_;
  std::vector<std::unique_ptr<LruCache<bool>>> caches_;
};

struct NewElement {
  int length = 0;
  Word witness;  // lexicographically first element of that length
};

// min{|w| : w reduced, |w| <= bound, w in N_l, w not in <x>}. Pruned DFS:
// a prefix whose level-l representative is longer than the letters left
// cannot be completed to a member.
std::optional<NewElement> min_new_length(const SubgroupLevel& L, int bound,
                                         const SearchOptions& options = {});

// g(n) = #{reduced w : |w| <= n, w in N_l} for n = 0..nmax.
CountTable growth_table(const SubgroupLevel& L, int nmax, const SearchOptions& options = {});

}  // namespace subnormal
