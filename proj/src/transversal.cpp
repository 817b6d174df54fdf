#include "subnormal/transversal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "subnormal/error.hpp"
#include "subnormal/subgroup.hpp"
#include "subnormal/tower.hpp"

namespace subnormal {

namespace {

void check_spec(const TransversalSpec& S) {
  SubgroupLevel{S.rank, S.level}.validate();
  if (S.rank < 2) throw InvalidInput("the tower needs rank >= 2");
  if (S.level < 1) throw DomainError("the transversal needs level >= 1");
}

void require_rank2(const Word& w) {
  if (w.max_generator() > 1) throw DomainError("word must be over x and y");
}

class CogrowthPolicy {
 public:
  using State = Tower::Node;
  using Result = DepthCounts;

  explicit CogrowthPolicy(const TransversalSpec& S) : tower_(S.rank, S.level - 1), h_(S.level - 1) {}

  State root() const { return Tower::kRoot; }

  bool extend(State s, Letter a, int, State& out) {
    if (a.is_x() && s == Tower::kRoot) return false;
    out = h_ > 0 ? tower_.step(h_, s, a) : Tower::kRoot;
    return true;
  }

  void visit(State, int depth, Result& r) {
    if (r.size() <= static_cast<std::size_t>(depth)) r.resize(static_cast<std::size_t>(depth) + 1, 0);
    ++r[static_cast<std::size_t>(depth)];
  }

  Tower::Mark mark() const { return tower_.mark(); }
  void restore(const Tower::Mark& m) { tower_.restore(m); }

  static void merge(Result& into, const Result& shard) { merge_depth_counts(into, shard); }

 private:
  Tower tower_;
  int h_;
};

}  // namespace

bool is_in_T(const Word& w, const TransversalSpec& S) {
  check_spec(S);
  if (w.max_generator() >= S.rank) throw InvalidGenerator("word uses a generator outside the rank");
  return w.is_reduced() && satisfies_transversal_condition(w, {S.rank, S.level});
}

CountTable cogrowth_table(const TransversalSpec& S, int nmax, const SearchOptions& options) {
  check_spec(S);
  if (nmax < 0) throw DomainError("nmax must be >= 0");
  return counted_table(S.rank, nmax, [&] { return CogrowthPolicy(S); }, options);
}

CountTable cogrowth_dp_level2(int nmax) {
  if (nmax < 0) throw DomainError("nmax must be >= 0");
  // cell (sigma + nmax) * 4 + code of the last letter
  const int width = 2 * nmax + 1;
  std::vector<BigInt> cur(static_cast<std::size_t>(4 * width)), next(cur.size());
  auto at = [&](std::vector<BigInt>& v, int sigma, int code) -> BigInt& {
    return v[static_cast<std::size_t>((sigma + nmax) * 4 + code)];
  };
  std::vector<BigInt> spherical{1};
  if (nmax >= 1) {
    at(cur, 1, kY.code()) = 1;
    at(cur, -1, kYInv.code()) = 1;
    spherical.emplace_back(2);
  }
  for (int n = 2; n <= nmax; ++n) {
    for (auto& c : next) c = 0;
    BigInt total = 0;
    for (int sigma = -(n - 1); sigma <= n - 1; ++sigma) {
      for (int last = 0; last < 4; ++last) {
        const BigInt& c = at(cur, sigma, last);
        if (c == 0) continue;
        for (int code = 0; code < 4; ++code) {
          if ((code ^ 1) == last) continue;
          const Letter a = Letter::from_code(code);
          if (a.is_x() && sigma == 0) continue;
          const int s2 = a.is_x() ? sigma : sigma + a.sign();
          at(next, s2, code) += c;
          total += c;
        }
      }
    }
    std::swap(cur, next);
    spherical.push_back(total);
  }
  return CountTable::from_spherical(std::move(spherical), nmax);
}

double normalized_cogrowth(const BigInt& f, int n, int rank) {
  if (n == 0 || f == 0) return 0.0;
  return std::exp(log_of(f) + 0.5 * std::log(n) - n * std::log(2.0 * rank - 1));
}

TextTable cogrowth_text(const CountTable& table, int rank) {
  TextTable t;
  t.columns = {"n", "f", "normalized"};
  for (int n = 0; n <= table.nmax(); ++n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", normalized_cogrowth(table[n], n, rank));
    t.rows.push_back({std::to_string(n), table[n].get_str(), buf});
  }
  if (table.truncated) {
    t.truncated = true;
    t.truncation_note = "node budget exhausted; rows complete up to n=" + std::to_string(table.nmax()) +
                        " of " + std::to_string(table.requested_nmax);
  }
  return t;
}

// ---------------------------------------------------------------------------

bool in_Tplus(const Word& w) {
  require_rank2(w);
  return !w.empty() && w.front() == kY && is_in_T(w, {2, 2});
}

bool in_Tminus(const Word& w) {
  require_rank2(w);
  return !w.empty() && w.front() == kYInv && is_in_T(w, {2, 2});
}

bool in_U(const Word& w) {
  require_rank2(w);
  if (!w.is_reduced()) return false;
  long h = 0;
  for (Letter a : w.letters()) {
    if (!a.is_x()) h += a.sign();
    if (h < 0) return false;
  }
  return true;
}

bool in_S(const Word& w) {
  require_rank2(w);
  if (!w.is_reduced()) return false;
  long h = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_x()) continue;
    h += w[i].sign();
    if (h != 0 || i + 1 == w.size()) continue;
    const int eta = w[i].sign();
    if (!w[i + 1].is_x()) return false;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j].is_x()) continue;
      if (w[j].sign() != eta) return false;
      break;
    }
  }
  return true;
}

bool in_S_prime(const Word& w) {
  if (!in_S(w)) return false;
  for (Letter a : w.letters()) {
    if (!a.is_x()) return a.sign() > 0;
  }
  return false;
}

Word bar(const Word& w) {
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  for (auto& a : out) {
    if (a.generator() == 1) a = a.inverse();
  }
  return Word(std::move(out));
}

std::vector<FactBlock> tplus_factorize(const Word& w) {
  if (!in_Tplus(w)) throw DomainError(w.str() + " is not in T+");
  std::vector<FactBlock> blocks;
  const auto letters = w.letters();
  std::size_t i = 0;
  while (i < letters.size()) {
    FactBlock b;
    const Letter up = letters[i];
    b.orientation = up.sign();
    while (i < letters.size() && letters[i] == up) {
      ++b.rising;
      ++i;
    }
    long h = b.rising * b.orientation;
    const std::size_t core_begin = i;
    std::size_t j = i;
    while (j < letters.size() && h != 0) {
      if (!letters[j].is_x()) h += letters[j].sign();
      ++j;
    }
    if (h != 0) {
      b.closed = false;
      b.core = Word(std::vector<Letter>(letters.begin() + static_cast<long>(core_begin), letters.end()));
      blocks.push_back(std::move(b));
      break;
    }
    std::size_t core_end = j;
    while (core_end > core_begin && letters[core_end - 1] == up.inverse()) {
      --core_end;
      ++b.falling;
    }
    b.core = Word(std::vector<Letter>(letters.begin() + static_cast<long>(core_begin),
                                      letters.begin() + static_cast<long>(core_end)));
    blocks.push_back(std::move(b));
    i = j;
  }
  return blocks;
}

int crossing_number(const Word& w) {
  int count = 0;
  long h = 0;
  for (Letter a : w.letters()) {
    if (a.generator() != 1) {
      if (a.generator() > 1) throw DomainError("word must be over x and y");
      continue;
    }
    h += a.sign();
    if (h == 0) ++count;
  }
  return count;
}

int sign_changes(const Word& w) {
  require_rank2(w);
  int changes = 0;
  int side = 0;
  long h = 0;
  for (Letter a : w.letters()) {
    if (a.is_x()) continue;
    h += a.sign();
    const int s = h > 0 ? 1 : (h < 0 ? -1 : 0);
    if (s != 0) {
      if (side != 0 && s != side) ++changes;
      side = s;
    }
  }
  return changes;
}

Word reflect(const Word& w) {
  if (!in_S(w)) throw DomainError(w.str() + " is not in S_n");
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  long h = 0;
  for (auto& a : out) {
    if (a.is_x()) continue;
    const long h2 = h + a.sign();
    if (std::min(h, h2) < 0) a = a.inverse();
    h = h2;
  }
  return Word(std::move(out));
}

Word bridge_lift(const Word& w) {
  if (!in_Tplus(w)) throw DomainError(w.str() + " is not in T+");
  std::vector<Letter> out;
  out.reserve(w.size());
  long h = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter a = w[i];
    const long h2 = a.is_x() ? h : h + a.sign();
    const bool enters_lower = h == 0 && h2 < 0;
    const bool leaves_lower = h < 0 && h2 == 0 && i + 1 < w.size();
    if (!enters_lower && !leaves_lower) out.push_back(a);
    h = h2;
  }
  return Word(std::move(out));
}

}  // namespace subnormal
