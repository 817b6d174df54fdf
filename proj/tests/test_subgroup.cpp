#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <random>
#include <set>

#include "oracles.hpp"
#include "subnormal/error.hpp"
#include "subnormal/subgroup.hpp"
#include "subnormal/transversal.hpp"

using namespace subnormal;

namespace {

Word W(const std::string& s, int rank = 2) { return Word::parse(s, rank); }

const std::vector<std::string>& words_upto_10() {
  static const auto words = oracle::reduced_words(2, 0, 10);
  return words;
}

std::vector<std::string> members(int level, int maxlen) {
  std::vector<std::string> out;
  for (const auto& w : words_upto_10()) {
    if (static_cast<int>(w.size()) <= maxlen && is_member(W(w), {2, level})) out.push_back(w);
  }
  return out;
}

// A random element of N_level built from conjugates of x.
Word random_member(std::mt19937_64& rng, int level, int rank = 2) {
  if (level == 0) {
    std::vector<Letter> letters;
    const int len = static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) letters.push_back(Letter::from_code(static_cast<int>(rng() % (2 * rank))));
    return reduce(Word(std::move(letters)));
  }
  std::vector<Conjugate> factors;
  const int count = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < count; ++i) {
    factors.push_back({random_member(rng, level - 1, rank), rng() % 2 ? 1 : -1});
  }
  return assemble(factors);
}

// A random element of Y_level: the representative of a random element of
// N_{level-1}.
Word random_basis_conjugator(std::mt19937_64& rng, int level, int rank = 2) {
  const Word h = random_member(rng, level - 1, rank);
  return rewrite_to_transversal(h, {rank, level}).residual;
}

}  // namespace

TEST_CASE("membership agrees with the longest-peel oracle for |w| <= 10") {
  oracle::Tower ref;
  for (int level = 1; level <= 3; ++level) {
    for (const auto& w : words_upto_10()) {
      const bool fast = is_member(W(w), {2, level});
      REQUIRE(fast == ref.member(w, level));
    }
  }
}

TEST_CASE("residuals agree with the longest-peel oracle for |w| <= 9") {
  oracle::Tower ref;
  for (int level = 1; level <= 3; ++level) {
    for (const auto& w : words_upto_10()) {
      if (w.size() > 9) continue;
      const auto trace = rewrite_to_transversal(W(w), {2, level});
      REQUIRE(trace.residual.str() == ref.residual(w, level));
    }
  }
}

TEST_CASE("the literal reference oracle agrees with the streaming rewriter") {
  MembershipOracle lit(2);
  for (int level = 1; level <= 3; ++level) {
    for (const auto& w : words_upto_10()) {
      if (w.size() > 8) continue;
      const auto a = lit.rewrite(W(w), level);
      const auto b = rewrite_to_transversal(W(w), {2, level});
      REQUIRE(a.residual == b.residual);
      REQUIRE(a.steps == b.steps);
      REQUIRE(lit.is_member(W(w), level) == is_member(W(w), {2, level}));
    }
  }
  CHECK(lit.cache_stats().hits > 0);
}

TEST_CASE("a tiny cache evicts without changing answers") {
  MembershipOracle tiny(2, 2048);
  for (const auto& w : words_upto_10()) {
    if (w.size() > 7) continue;
    REQUIRE(tiny.is_member(W(w), 3) == is_member(W(w), {2, 3}));
  }
  const auto stats = tiny.cache_stats();
  CHECK(stats.evictions > 0);
  CHECK(stats.bytes <= 2048);
}

TEST_CASE("rewrite traces reassemble the input") {
  std::mt19937_64 rng(17);
  for (int level = 1; level <= 3; ++level) {
    for (const auto& w : words_upto_10()) {
      if (w.size() > 8) continue;
      const auto trace = rewrite_to_transversal(W(w), {2, level});
      REQUIRE(reduce_product(assemble(trace.steps), trace.residual).str() == w);
      for (const auto& step : trace.steps) REQUIRE(is_member(step.conjugator, {2, level - 1}));
    }
  }
}

TEST_CASE("tower nesting for |w| <= 10") {
  for (const auto& w : words_upto_10()) {
    bool above = true;
    for (int level = 0; level <= 4; ++level) {
      const bool here = is_member(W(w), {2, level});
      if (!above) REQUIRE_FALSE(here);
      above = here;
    }
  }
}

TEST_CASE("closure under inverses and products for total length <= 10") {
  for (int level = 1; level <= 3; ++level) {
    const auto ms = members(level, 9);
    for (const auto& u : ms) REQUIRE(is_member(W(u).inverse(), {2, level}));
    std::vector<std::vector<std::string>> by_length(11);
    for (const auto& u : ms) by_length[u.size()].push_back(u);
    for (std::size_t a = 0; a <= 10; ++a) {
      for (std::size_t b = 0; a + b <= 10; ++b) {
        for (const auto& u : by_length[a]) {
          for (const auto& v : by_length[b]) REQUIRE(is_member(W(u + v), {2, level}));
        }
      }
    }
  }
}

TEST_CASE("normality in the parent for total length <= 10") {
  for (int level = 1; level <= 3; ++level) {
    const auto hs = members(level, 8);
    const auto gs = members(level - 1, 4);
    for (const auto& h : hs) {
      for (const auto& g : gs) {
        if (h.size() + g.size() > 10) continue;
        const Word c = reduce(W(g) * W(h) * W(g).inverse());
        REQUIRE(is_member(c, {2, level}));
      }
    }
  }
}

TEST_CASE("the tower is not normal in F beyond level 1") {
  CHECK(is_member(W("x"), {2, 2}));
  CHECK_FALSE(is_member(W("yxY"), {2, 2}));
  CHECK(is_member(W("yxY"), {2, 1}));
  CHECK(is_member(W("yxYxyXY"), {2, 2}));
  CHECK_FALSE(is_member(W("yxYxyXY"), {2, 3}));
}

TEST_CASE("rank three membership") {
  oracle::Tower ref;
  for (const auto& w : oracle::reduced_words(3, 0, 6)) {
    for (int level = 1; level <= 3; ++level) {
      REQUIRE(is_member(W(w, 3), {3, level}) == ref.member(w, level));
    }
  }
}

TEST_CASE("residuals are shortest representatives in the transversal") {
  for (int level = 1; level <= 3; ++level) {
    std::set<std::string> reps;
    for (const auto& w : words_upto_10()) {
      if (w.size() > 8) continue;
      const Word r = rewrite_to_transversal(W(w), {2, level}).residual;
      REQUIRE(r.size() <= w.size());
      REQUIRE(is_in_T(r, {2, level}));
      reps.insert(r.str());
      // Elements of T represent themselves.
      if (is_in_T(W(w), {2, level})) REQUIRE(r.str() == w);
    }
    for (const auto& r : reps) {
      for (std::size_t k = 0; k <= r.size(); ++k) REQUIRE(is_in_T(W(r.substr(0, k)), {2, level}));
    }
  }
}

TEST_CASE("distinct transversal words lie in distinct cosets") {
  for (int level = 1; level <= 3; ++level) {
    std::vector<std::string> ts;
    for (const auto& w : words_upto_10()) {
      if (w.size() <= 6 && is_in_T(W(w), {2, level})) ts.push_back(w);
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        REQUIRE_FALSE(is_member(W(ts[i]) * W(ts[j]).inverse(), {2, level}));
      }
    }
  }
}

TEST_CASE("decomposition round trip on every member with |w| <= 10") {
  for (int level = 1; level <= 3; ++level) {
    for (const auto& w : members(level, 10)) {
      const auto factors = decompose_in_basis(W(w), {2, level});
      REQUIRE(assemble(factors).str() == w);
      for (std::size_t i = 0; i < factors.size(); ++i) {
        REQUIRE(is_basis_conjugator(factors[i].conjugator, {2, level}));
        if (i > 0) {
          const bool cancels = factors[i].conjugator == factors[i - 1].conjugator &&
                               factors[i].exponent == -factors[i - 1].exponent;
          REQUIRE_FALSE(cancels);
        }
      }
    }
  }
}

TEST_CASE("decomposition recovers 1000 random basis products per level") {
  std::mt19937_64 rng(2024);
  for (int rank = 2; rank <= 3; ++rank) {
    for (int level = 1; level <= 3; ++level) {
      for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Conjugate> factors;
        const int count = static_cast<int>(rng() % 5);
        for (int i = 0; i < count; ++i) {
          Word t = random_basis_conjugator(rng, level, rank);
          REQUIRE(is_basis_conjugator(t, {rank, level}));
          factors.push_back({std::move(t), rng() % 2 ? 1 : -1});
          // Repeat a factor now and then so cancellations occur.
          if (rng() % 4 == 0) factors.push_back({factors.back().conjugator, -factors.back().exponent});
        }
        const Word h = assemble(factors);
        REQUIRE(is_member(h, {rank, level}));
        REQUIRE(decompose_in_basis(h, {rank, level}) == freely_reduce_factors(factors));
      }
    }
  }
}

TEST_CASE("conjugates by non-basis elements expand into the basis") {
  std::mt19937_64 rng(99);
  for (int level = 1; level <= 3; ++level) {
    for (int trial = 0; trial < 300; ++trial) {
      const Word v = random_member(rng, level - 1);
      const auto factors = expand_conjugate(v, 1, {2, level});
      for (const auto& f : factors) REQUIRE(is_basis_conjugator(f.conjugator, {2, level}));
      REQUIRE(assemble(factors) == assemble({{v, 1}}));
    }
  }
  CHECK_THROWS_AS(expand_conjugate(W("y"), 1, {2, 2}), NotAMember);
}

TEST_CASE("non-members are rejected by the decomposition") {
  CHECK_THROWS_AS(decompose_in_basis(W("yxY"), {2, 2}), NotAMember);
  CHECK_THROWS_AS(decompose_in_basis(W("y"), {2, 1}), NotAMember);
  const auto f = decompose_in_basis(W("yxYX"), {2, 1});
  REQUIRE(f.size() == 2);
  CHECK(f[0] == Conjugate{W("y"), 1});
  CHECK(f[1] == Conjugate{W(""), -1});
}

TEST_CASE("normal form of members: x-syllables survive between blocks of the parent") {
  for (int level = 1; level <= 3; ++level) {
    for (const auto& w : members(level, 10)) {
      if (w.empty()) continue;
      // Merge equal neighbours into powers t x^k t^{-1}.
      std::vector<std::pair<Word, int>> powers;
      for (const auto& f : decompose_in_basis(W(w), {2, level})) {
        if (!powers.empty() && powers.back().first == f.conjugator) {
          powers.back().second += f.exponent;
          if (powers.back().second == 0) powers.pop_back();
        } else {
          powers.push_back({f.conjugator, f.exponent});
        }
      }
      REQUIRE(!powers.empty());
      std::vector<Word> blocks{powers.front().first};
      for (std::size_t i = 1; i < powers.size(); ++i) {
        blocks.push_back(reduce_product(powers[i - 1].first.inverse(), powers[i].first));
      }
      blocks.push_back(powers.back().first.inverse());
      std::string spelled = blocks[0].str();
      for (std::size_t i = 0; i < powers.size(); ++i) {
        const int k = powers[i].second;
        spelled += std::string(static_cast<std::size_t>(std::abs(k)), k > 0 ? 'x' : 'X');
        spelled += blocks[i + 1].str();
      }
      // The word is spelled without cancellation.
      REQUIRE(spelled == w);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Word& u = blocks[i];
        REQUIRE(is_member(u, {2, level - 1}));
        if (i > 0 && i + 1 < blocks.size()) REQUIRE_FALSE(u.empty());
        if (!u.empty()) {
          REQUIRE_FALSE(u.front().is_x());
          REQUIRE_FALSE(u.back().is_x());
        }
      }
    }
  }
}

TEST_CASE("shortest new elements") {
  const auto d1 = min_new_length({2, 1}, 20);
  const auto d2 = min_new_length({2, 2}, 20);
  const auto d3 = min_new_length({2, 3}, 20);
  REQUIRE(d1);
  REQUIRE(d2);
  REQUIRE(d3);
  CHECK(d1->length == 3);
  CHECK(d2->length == 7);
  CHECK(d3->length == 15);
  CHECK(d1->witness.str() == "yxY");
  CHECK(d2->witness.str() == "yxYxyXY");
  CHECK(d3->witness.str() == "yxYxyXYxyxYXyXY");
  CHECK_FALSE(min_new_length({2, 2}, 6));
  CHECK_FALSE(min_new_length({2, 3}, 14));
}

TEST_CASE("shortest new elements match exhaustive search") {
  for (int level = 1; level <= 2; ++level) {
    std::string first;
    for (int n = 1; n <= 10 && first.empty(); ++n) {
      for (const auto& w : oracle::reduced_words(2, n, n)) {
        bool x_power = true;
        for (char c : w) x_power = x_power && oracle::is_x(c);
        if (!x_power && is_member(W(w), {2, level})) {
          first = w;
          break;
        }
      }
    }
    const auto d = min_new_length({2, level}, 10);
    REQUIRE(d);
    CHECK(d->witness.str() == first);
    CHECK(d->length == static_cast<int>(first.size()));
  }
}

TEST_CASE("shortest new elements do not depend on the worker count") {
  for (int workers : {1, 2, 4}) {
    const auto d = min_new_length({2, 3}, 16, {workers, kDefaultNodeBudget});
    REQUIRE(d);
    CHECK(d->witness.str() == "yxYxyXYxyxYXyXY");
  }
  const auto d = min_new_length({3, 2}, 10, {3, kDefaultNodeBudget});
  REQUIRE(d);
  CHECK(d->length == 7);
}

TEST_CASE("growth tables match exhaustive counting") {
  for (int level = 0; level <= 3; ++level) {
    const auto table = growth_table({2, level}, 10);
    CHECK_FALSE(table.truncated);
    for (int n = 0; n <= 10; ++n) {
      std::size_t count = 0;
      for (const auto& w : words_upto_10()) {
        if (static_cast<int>(w.size()) <= n && is_member(W(w), {2, level})) ++count;
      }
      REQUIRE(table[n] == BigInt(static_cast<unsigned long>(count)));
    }
  }
  const auto g = growth_table({2, 1}, 2);
  CHECK(g[0] == 1);
  CHECK(g[1] == 3);
  CHECK(g[2] == 5);
}

TEST_CASE("growth tables are deterministic across workers") {
  const auto a = growth_table({2, 2}, 12, {1, kDefaultNodeBudget});
  const auto b = growth_table({2, 2}, 12, {4, kDefaultNodeBudget});
  CHECK(a.cumulative == b.cumulative);
}

TEST_CASE("a small node budget truncates or aborts") {
  CHECK_THROWS_AS(min_new_length({2, 3}, 20, {1, 1000}), BudgetExceeded);
  const auto t = growth_table({2, 1}, 15, {1, 5000});
  CHECK(t.truncated);
  CHECK(t.nmax() < 15);
  const auto full = growth_table({2, 1}, 15);
  for (int n = 0; n <= t.nmax(); ++n) CHECK(t[n] == full[n]);
}

TEST_CASE("invalid levels and ranks") {
  CHECK_THROWS_AS(is_member(W("x"), {2, 9}), InvalidInput);
  CHECK_THROWS_AS(is_member(W("x"), {0, 1}), InvalidInput);
  CHECK_THROWS_AS(is_member(W("xz", 3), {2, 1}), InvalidGenerator);
  CHECK_THROWS_AS(rewrite_to_transversal(W("x"), {2, 0}), DomainError);
  CHECK_THROWS_AS(min_new_length({2, 2}, 0), DomainError);
  CHECK_THROWS_AS(min_new_length({1, 1}, 5), InvalidInput);
}
