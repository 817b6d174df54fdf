#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "subnormal/error.hpp"
#include "subnormal/transversal.hpp"

using namespace subnormal;

namespace {

Word W(const std::string& s, int rank = 2) { return Word::parse(s, rank); }

// Heights of the walk after every letter, starting at 0.
std::vector<long> heights(const std::string& w) {
  std::vector<long> h{0};
  for (char c : w) h.push_back(h.back() + (c == 'y') - (c == 'Y'));
  return h;
}

// Random word of T+ at level 2 of the given length, letter by letter among
// the admissible continuations.
std::string random_tplus(std::mt19937_64& rng, int n) {
  std::string w = "y";
  long h = 1;
  while (static_cast<int>(w.size()) < n) {
    std::string options;
    for (char c : std::string("xXyY")) {
      if (w.back() == oracle::inv(c)) continue;
      if (oracle::is_x(c) && h == 0) continue;
      options.push_back(c);
    }
    const char c = options[rng() % options.size()];
    w.push_back(c);
    h += (c == 'y') - (c == 'Y');
  }
  return w;
}

}  // namespace

TEST_CASE("level-one cogrowth is 2n + 1") {
  const auto t = cogrowth_table({2, 1}, 30);
  for (int n = 0; n <= 30; ++n) CHECK(t[n] == 2 * n + 1);
}

TEST_CASE("cogrowth search matches brute force over the transversal condition") {
  oracle::Tower ref;
  for (int rank = 2; rank <= 3; ++rank) {
    const int nmax = rank == 2 ? 9 : 6;
    const auto words = oracle::reduced_words(rank, 0, nmax);
    for (int level = 1; level <= 3; ++level) {
      const auto t = cogrowth_table({rank, level}, nmax);
      std::vector<unsigned long> sphere(static_cast<std::size_t>(nmax) + 1, 0);
      for (const auto& w : words) {
        const bool in = ref.in_transversal(w, level);
        REQUIRE(in == is_in_T(W(w, rank), {rank, level}));
        if (in) ++sphere[w.size()];
      }
      unsigned long total = 0;
      for (int n = 0; n <= nmax; ++n) {
        total += sphere[static_cast<std::size_t>(n)];
        REQUIRE(t.spherical[static_cast<std::size_t>(n)] == sphere[static_cast<std::size_t>(n)]);
        REQUIRE(t[n] == total);
      }
    }
  }
}

TEST_CASE("level-two dynamic program equals the search for n <= 14") {
  const auto dp = cogrowth_dp_level2(14);
  const auto dfs = cogrowth_table({2, 2}, 14);
  CHECK(dp.cumulative == dfs.cumulative);
  CHECK(dp.spherical == dfs.spherical);
  const auto small = cogrowth_dp_level2(3);
  CHECK(small[3] == 27);
}

TEST_CASE("cogrowth search is deterministic across workers and budgets") {
  const auto a = cogrowth_table({2, 3}, 12, {1, kDefaultNodeBudget});
  const auto b = cogrowth_table({2, 3}, 12, {3, kDefaultNodeBudget});
  CHECK(a.cumulative == b.cumulative);
  const auto c = cogrowth_table({2, 3}, 12, {1, 20000});
  CHECK(c.truncated);
  for (int n = 0; n <= c.nmax(); ++n) CHECK(c[n] == a[n]);
}

TEST_CASE("normalized cogrowth") {
  CHECK(normalized_cogrowth(BigInt(27), 3, 2) == Catch::Approx(std::sqrt(3.0)));
  CHECK(normalized_cogrowth(BigInt(0), 3, 2) == 0.0);
  const auto text = cogrowth_text(cogrowth_dp_level2(2), 2);
  REQUIRE(text.rows.size() == 3);
  CHECK(text.rows[2][1] == "9");
}

TEST_CASE("T splits into T+ and T-, exchanged by bar") {
  std::map<int, int> plus, minus;
  for (const auto& w : oracle::reduced_words(2, 1, 10)) {
    const Word v = W(w);
    if (!is_in_T(v, {2, 2})) {
      CHECK_FALSE(in_Tplus(v));
      CHECK_FALSE(in_Tminus(v));
      continue;
    }
    REQUIRE(in_Tplus(v) != in_Tminus(v));
    REQUIRE(bar(bar(v)) == v);
    if (in_Tplus(v)) {
      REQUIRE(in_Tminus(bar(v)));
      ++plus[static_cast<int>(w.size())];
    } else {
      ++minus[static_cast<int>(w.size())];
    }
  }
  CHECK(plus == minus);
}

TEST_CASE("factorization of T+ at axis returns") {
  for (const auto& w : oracle::reduced_words(2, 1, 10)) {
    const Word v = W(w);
    if (!in_Tplus(v)) continue;
    const auto blocks = tplus_factorize(v);
    REQUIRE(!blocks.empty());
    std::string spelled;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& b = blocks[i];
      const char up = b.orientation > 0 ? 'y' : 'Y';
      const std::string block = std::string(static_cast<std::size_t>(b.rising), up) + b.core.str() +
                                std::string(static_cast<std::size_t>(b.falling), oracle::inv(up));
      REQUIRE(b.rising >= 1);
      if (i + 1 < blocks.size()) REQUIRE(b.closed);
      const auto h = heights(block);
      for (std::size_t k = 1; k + 1 < h.size(); ++k) REQUIRE(h[k] != 0);
      if (b.closed) {
        REQUIRE(h.back() == 0);
        REQUIRE(b.falling >= 1);
      } else {
        REQUIRE(h.back() != 0);
        REQUIRE(b.falling == 0);
      }
      spelled += block;
    }
    REQUIRE(spelled == w);
  }
  const auto f = tplus_factorize(W("yxYYxy"));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == FactBlock{1, W("x"), 1, 1, true});
  CHECK(f[1] == FactBlock{1, W("x"), 1, -1, true});
  CHECK_THROWS_AS(tplus_factorize(W("Yxy")), DomainError);
  CHECK_THROWS_AS(tplus_factorize(W("yYx")), DomainError);
}

TEST_CASE("crossing number counts axis returns after a vertical letter") {
  CHECK(crossing_number(W("yxYYxy")) == 2);
  CHECK(crossing_number(W("x")) == 0);
  CHECK(crossing_number(W("yY")) == 1);
  for (const auto& w : oracle::reduced_words(2, 0, 8)) {
    const auto h = heights(w);
    int count = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!oracle::is_x(w[i]) && h[i + 1] == 0) ++count;
    }
    REQUIRE(crossing_number(W(w)) == count);
  }
}

TEST_CASE("sign changes") {
  CHECK(sign_changes(W("yxYYxy")) == 1);
  CHECK(sign_changes(W("yxYxy")) == 0);
  CHECK(sign_changes(W("yxYYxyyxYY")) == 3);
}

TEST_CASE("reflection is injective on S'_n with image in U_n, n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    std::set<std::string> images;
    std::size_t domain = 0;
    enumerate_reduced(2, n, [&](std::span<const Letter> letters) {
      const Word w(std::vector<Letter>(letters.begin(), letters.end()));
      if (!in_S_prime(w)) return;
      ++domain;
      const Word r = reflect(w);
      REQUIRE(r.size() == w.size());
      REQUIRE(r.is_reduced());
      REQUIRE(in_U(r));
      images.insert(r.str());
    });
    REQUIRE(images.size() == domain);
  }
}

TEST_CASE("reflection fixes words of U_n and keeps absolute heights") {
  for (const auto& w : oracle::reduced_words(2, 1, 9)) {
    const Word v = W(w);
    if (!in_S(v)) continue;
    const auto a = heights(w);
    const auto b = heights(reflect(v).str());
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i]) == b[i]);
    if (in_U(v)) REQUIRE(reflect(v) == v);
  }
}

TEST_CASE("reflection identifies a word with its mirrored first excursion") {
  // Outside S'_n the map is two-to-one on the first excursion.
  CHECK(in_S(W("YxyxyxY")));
  CHECK(in_S(W("yxYxYxy")));
  CHECK_FALSE(in_S_prime(W("YxyxyxY")));
  CHECK(reflect(W("YxyxyxY")) == reflect(W("yxYxYxy")));
  CHECK(reflect(W("yxYxYxy")).str() == "yxYxyxY");
  CHECK_THROWS_AS(reflect(W("yYx")), DomainError);
}

TEST_CASE("lift is injective on T+_n with length |w| - sign changes, n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    std::set<std::string> images;
    std::size_t domain = 0;
    enumerate_reduced(2, n, [&](std::span<const Letter> letters) {
      const Word w(std::vector<Letter>(letters.begin(), letters.end()));
      if (!in_Tplus(w)) return;
      ++domain;
      const Word l = bridge_lift(w);
      REQUIRE(static_cast<int>(l.size()) == n - sign_changes(w));
      images.insert(l.str());
    });
    REQUIRE(images.size() == domain);
  }
  CHECK(bridge_lift(W("yxYYxy")).str() == "yxYxy");
}

TEST_CASE("lift is injective on sampled long words of T+") {
  std::mt19937_64 rng(8);
  std::map<std::string, std::string> seen;
  for (int trial = 0; trial < 20000; ++trial) {
    const std::string w = random_tplus(rng, 20 + static_cast<int>(rng() % 21));
    const Word v = W(w);
    REQUIRE(in_Tplus(v));
    const Word l = bridge_lift(v);
    REQUIRE(l.size() == v.size() - static_cast<std::size_t>(sign_changes(v)));
    const auto [it, fresh] = seen.emplace(l.str(), w);
    if (!fresh) REQUIRE(it->second == w);
  }
}

TEST_CASE("predicates reject foreign input") {
  CHECK_THROWS_AS(in_U(W("z", 3)), DomainError);
  CHECK_THROWS_AS(crossing_number(W("z", 3)), DomainError);
  CHECK_FALSE(in_U(W("yY")));
  CHECK(in_U(W("yxY")));
  CHECK_FALSE(in_U(W("Yy")));
  CHECK_THROWS_AS(cogrowth_table({2, 0}, 3), DomainError);
  CHECK_THROWS_AS(cogrowth_table({1, 1}, 3), InvalidInput);
}
