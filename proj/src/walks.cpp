#include "subnormal/walks.hpp"

#include <limits>
#include <map>
#include <optional>

#include "subnormal/error.hpp"

namespace subnormal {

namespace {

Rational rational_power(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<BigInt> count_U_table(int nmax) {
  if (nmax < 0) throw DomainError("n must be >= 0");
  // cell h * 4 + code of the last letter; heights 0..nmax
  const auto cells = static_cast<std::size_t>(4 * (nmax + 1));
  std::vector<BigInt> cur(cells), next(cells);
  std::vector<BigInt> table{1};
  auto idx = [](int h, int code) { return static_cast<std::size_t>(4 * h + code); };
  if (nmax >= 1) {
    cur[idx(0, kX.code())] = 1;
    cur[idx(0, kXInv.code())] = 1;
    cur[idx(1, kY.code())] = 1;
    table.emplace_back(3);
  }
  for (int n = 2; n <= nmax; ++n) {
    for (auto& c : next) c = 0;
    BigInt total = 0;
    for (int h = 0; h < n; ++h) {
      for (int last = 0; last < 4; ++last) {
        const BigInt& c = cur[idx(h, last)];
        if (c == 0) continue;
        for (int code = 0; code < 4; ++code) {
          if ((code ^ 1) == last) continue;
          const Letter a = Letter::from_code(code);
          const int h2 = a.is_x() ? h : h + a.sign();
          if (h2 < 0) continue;
          next[idx(h2, code)] += c;
          total += c;
        }
      }
    }
    std::swap(cur, next);
    table.push_back(total);
  }
  return table;
}

BigInt count_U(int n) { return count_U_table(n).back(); }

Rational prob_U(int n) {
  Rational p(count_U(n), count_reduced(n, 2));
  p.canonicalize();
  return p;
}

Rational jump_probability(int k) {
  if (k >= 2) return 0;
  if (k == 1) return Rational(2, 3);
  const int d = -k;
  Rational p(power(2, static_cast<unsigned long>(d)), power(3, static_cast<unsigned long>(d + 2)));
  p.canonicalize();
  return p;
}

JumpLaw jump_law_exact(int depth) {
  if (depth < 0) throw DomainError("depth must be >= 0");
  if (depth > 100000) throw DomainError("depth too large");
  JumpLaw law;
  law.depth = depth;
  for (int i = 0; i <= depth + 1; ++i) law.closed_form.push_back(jump_probability(1 - i));

  // Letter process after a vertical letter. Within a horizontal run the next
  // letter continues the run, or is y, or is Y, each with probability 1/3, so
  // the run ends in y with probability a = (1/3) / (1 - 1/3).
  const Rational third(1, 3);
  const Rational a = third / (Rational(1) - third);
  // After y: y directly, or a horizontal run (two letters) ending in y.
  law.transition_same = third + 2 * third * a;
  law.transition_switch = Rational(1) - law.transition_same;
  // Y = 1 - j where j is the number of Y letters before the next y.
  law.excursion_dp.push_back(law.transition_same);
  Rational reach = law.transition_switch;  // P(at least j Y letters), j = 1
  for (int j = 1; j <= depth + 1; ++j) {
    law.excursion_dp.push_back(reach * law.transition_switch);
    reach *= law.transition_same;
  }

  for (int i = 0; i <= depth + 1; ++i) {
    if (law.closed_form[static_cast<std::size_t>(i)] != law.excursion_dp[static_cast<std::size_t>(i)]) {
      throw Mismatch("jump law mismatch at k = " + std::to_string(1 - i));
    }
    const Rational& p = law.closed_form[static_cast<std::size_t>(i)];
    const int k = 1 - i;
    law.mass += p;
    law.mean += k * p;
    law.second_moment += k * k * p;
  }
  const Rational r = rational_power(Rational(2, 3), depth + 1);
  law.mass_tail = r / 3;
  law.mean_tail = r * (depth + 3) / 3;
  if (law.mass + law.mass_tail != 1) throw Mismatch("jump law mass is not 1");
  if (law.mean != law.mean_tail) throw Mismatch("jump law mean is not 0");
  return law;
}

std::vector<Rational> positive_walk_prob(int mmax) {
  if (mmax < 1) throw DomainError("mmax must be >= 1");
  const Rational up(2, 3);
  const Rational ratio(2, 3);
  const Rational ninth(1, 9);
  // dist[h] = P(z_j = h and all earlier z > 0), h = 1..j
  std::vector<Rational> dist(static_cast<std::size_t>(mmax) + 2);
  dist[1] = up;
  std::vector<Rational> out{up};
  for (int m = 2; m <= mmax; ++m) {
    std::vector<Rational> next(dist.size());
    // suffix[h] = sum over g >= h of dist[g] (2/3)^{g-h}
    Rational suffix = 0;
    for (int h = m; h >= 1; --h) {
      suffix = dist[static_cast<std::size_t>(h)] + ratio * suffix;
      next[static_cast<std::size_t>(h)] = up * dist[static_cast<std::size_t>(h) - 1] + ninth * suffix;
    }
    next[0] = 0;
    dist = std::move(next);
    Rational total = 0;
    for (int h = 1; h <= m; ++h) total += dist[static_cast<std::size_t>(h)];
    out.push_back(total);
  }
  return out;
}

int zero_threshold(int m) {
  if (m < 0) throw DomainError("m must be >= 0");
  const long long m2 = static_cast<long long>(m) * m;
  int c = 0;
  while (static_cast<long long>(c) * c * c < m2) ++c;
  return c;
}

Rational zero_count_tail(int m, int cap) {
  if (m < 0) throw DomainError("m must be >= 0");
  if (m > cap) throw DomainError("m = " + std::to_string(m) + " exceeds the cap " + std::to_string(cap));
  const int c = zero_threshold(m);
  // count[(pos + m) * (c + 1) + min(zeros, c)]
  const int width = 2 * m + 1;
  auto idx = [&](int pos, int z) { return static_cast<std::size_t>((pos + m) * (c + 1) + z); };
  std::vector<BigInt> cur(static_cast<std::size_t>(width * (c + 1))), next(cur.size());
  cur[idx(0, 0)] = 1;
  for (int step = 1; step <= m; ++step) {
    for (auto& v : next) v = 0;
    for (int pos = -(step - 1); pos <= step - 1; ++pos) {
      for (int z = 0; z <= c; ++z) {
        const BigInt& v = cur[idx(pos, z)];
        if (v == 0) continue;
        for (int d : {-1, 1}) {
          const int p2 = pos + d;
          const int z2 = std::min(c, z + (p2 == 0 ? 1 : 0));
          next[idx(p2, z2)] += v;
        }
      }
    }
    std::swap(cur, next);
  }
  BigInt hits = 0;
  for (int pos = -m; pos <= m; ++pos) hits += cur[idx(pos, c)];
  Rational q(hits, power(2, static_cast<unsigned long>(m)));
  q.canonicalize();
  return q;
}

ClassCounts reduced_form_class_counts(int n, int rank) {
  if (n < 0 || n > 9) throw DomainError("n must be in 0..9");
  if (rank < 1 || rank > 3) throw DomainError("rank must be in 1..3");
  const int alphabet = 2 * rank;
  std::map<std::vector<Letter>, std::uint64_t> tally;
  std::vector<Letter> word(static_cast<std::size_t>(n));
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(alphabet);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (int i = n - 1; i >= 0; --i) {
      word[static_cast<std::size_t>(i)] = Letter::from_code(static_cast<int>(rest % alphabet));
      rest /= static_cast<std::uint64_t>(alphabet);
    }
    const Word r = reduce(std::span<const Letter>(word));
    ++tally[std::vector<Letter>(r.letters().begin(), r.letters().end())];
  }
  ClassCounts out;
  out.n = n;
  out.rank = rank;
  for (int k = 0; k <= n; ++k) {
    std::optional<std::uint64_t> common;
    std::size_t classes = 0;
    enumerate_reduced(rank, k, [&](std::span<const Letter> w) {
      const auto it = tally.find(std::vector<Letter>(w.begin(), w.end()));
      const std::uint64_t c = it == tally.end() ? 0 : it->second;
      if (common && *common != c) {
        throw Mismatch("class count depends on the reduced word at k = " + std::to_string(k));
      }
      common = c;
      ++classes;
    });
    out.count.emplace_back(static_cast<unsigned long>(common.value_or(0)));
    out.classes.push_back(classes);
  }
  return out;
}

WalkSampler::WalkSampler(std::uint64_t seed, int rank) : engine_(seed), rank_(rank) {
  if (rank < 1 || rank > kMaxRank) throw InvalidInput("rank out of range");
}

std::uint64_t WalkSampler::uniform(std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v > limit);
  return v % bound;
}

Word WalkSampler::sample(int n) {
  if (n < 0) throw DomainError("n must be >= 0");
  const auto alphabet = static_cast<std::uint64_t>(2 * rank_);
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      letters.push_back(Letter::from_code(static_cast<int>(uniform(alphabet))));
      continue;
    }
    // Skip the code that would cancel the previous letter.
    int code = static_cast<int>(uniform(alphabet - 1));
    const int banned = letters.back().inverse().code();
    if (code >= banned) ++code;
    letters.push_back(Letter::from_code(code));
  }
  return Word(std::move(letters));
}

Word sample_correlated_walk(int n, std::uint64_t seed, int rank) {
  WalkSampler sampler(seed, rank);
  return sampler.sample(n);
}

}  // namespace subnormal
