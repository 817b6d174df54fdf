#include "subnormal/subgroup.hpp"

#include <atomic>
#include <limits>
#include <memory>

#include "subnormal/error.hpp"
#include "subnormal/tower.hpp"

namespace subnormal {

void SubgroupLevel::validate() const {
  if (rank < 1 || rank > kMaxRank) {
    throw InvalidInput("rank must be in 1.." + std::to_string(kMaxRank));
  }
  if (level < 0 || level > kMaxLevel) {
    throw InvalidInput("level must be in 0.." + std::to_string(kMaxLevel));
  }
}

Word assemble(const std::vector<Conjugate>& factors) {
  std::vector<Letter> letters;
  for (const auto& f : factors) {
    const auto v = f.conjugator.letters();
    letters.insert(letters.end(), v.begin(), v.end());
    letters.push_back(f.exponent > 0 ? kX : kXInv);
    const Word inv = f.conjugator.inverse();
    letters.insert(letters.end(), inv.letters().begin(), inv.letters().end());
  }
  return reduce(std::span<const Letter>(letters));
}

Word deletion_image(const Word& w) {
  std::vector<Letter> kept;
  kept.reserve(w.size());
  for (Letter a : w.letters()) {
    if (!a.is_x()) kept.push_back(a);
  }
  return reduce(std::span<const Letter>(kept));
}

bool is_member(const Word& w, const SubgroupLevel& L) {
  L.validate();
  if (w.max_generator() >= L.rank) throw InvalidGenerator("word uses a generator outside the rank");
  if (L.level == 0) return true;
  if (L.level == 1) {
    if (L.rank == 2) return exponent_sum(w.letters(), 1) == 0;
    return deletion_image(w).empty();
  }
  Tower tower(L.rank, L.level);
  return tower.walk(L.level, reduce(w).letters()) == Tower::kRoot;
}

RewriteTrace rewrite_to_transversal(const Word& w, const SubgroupLevel& L) {
  L.validate();
  if (L.level < 1) throw DomainError("rewriting needs level >= 1");
  if (w.max_generator() >= L.rank) throw InvalidGenerator("word uses a generator outside the rank");
  Tower tower(L.rank, L.level);
  RewriteTrace trace;
  Tower::Node node = Tower::kRoot;
  const Word rw = reduce(w);
  for (Letter a : rw.letters()) {
    const Tower::Node next = tower.step(L.level, node, a);
    if (next == node) trace.steps.push_back({tower.word(L.level, node), a.sign()});
    node = next;
  }
  trace.residual = tower.word(L.level, node);
  return trace;
}

bool satisfies_transversal_condition(const Word& w, const SubgroupLevel& L) {
  L.validate();
  if (L.level < 1) throw DomainError("the transversal condition needs level >= 1");
  const int h = L.level - 1;
  Tower tower(L.rank, h);
  Tower::Node node = Tower::kRoot;
  for (Letter a : w.letters()) {
    if (a.is_x() && node == Tower::kRoot) return false;
    if (h > 0) node = tower.step(h, node, a);
  }
  return true;
}

bool is_basis_conjugator(const Word& t, const SubgroupLevel& L) {
  return t.is_reduced() && satisfies_transversal_condition(t, L) && is_member(t, L.parent());
}

std::vector<Conjugate> freely_reduce_factors(std::vector<Conjugate> factors) {
  std::vector<Conjugate> out;
  out.reserve(factors.size());
  for (auto& f : factors) {
    if (!out.empty() && out.back().exponent == -f.exponent && out.back().conjugator == f.conjugator) {
      out.pop_back();
    } else {
      out.push_back(std::move(f));
    }
  }
  return out;
}

namespace {

// Position of the first x-letter preceded by a prefix in N_h, or -1.
long first_peel(const Word& v, int rank, int h) {
  Tower tower(rank, h);
  Tower::Node node = Tower::kRoot;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_x() && node == Tower::kRoot) return static_cast<long>(i);
    if (h > 0) node = tower.step(h, node, v[i]);
  }
  return -1;
}

void expand_into(const Word& v, int exponent, const SubgroupLevel& L,
                 std::vector<Conjugate>& out) {
  const long i = first_peel(v, L.rank, L.level - 1);
  if (i < 0) {
    out.push_back({v, exponent});
    return;
  }
  const Word u = v.prefix(static_cast<std::size_t>(i));
  const int delta = v[static_cast<std::size_t>(i)].sign();
  const Word rest = reduce_product(u, v.suffix_from(static_cast<std::size_t>(i) + 1));
  expand_into(u, delta, L, out);
  expand_into(rest, exponent, L, out);
  expand_into(u, -delta, L, out);
}

}  // namespace

std::vector<Conjugate> expand_conjugate(const Word& v, int exponent, const SubgroupLevel& L) {
  L.validate();
  if (L.level < 1) throw DomainError("basis expansion needs level >= 1");
  const Word rv = reduce(v);
  if (!is_member(rv, L.parent())) {
    throw NotAMember("conjugator " + rv.str() + " is not in the parent subgroup");
  }
  std::vector<Conjugate> out;
  expand_into(rv, exponent, L, out);
  return freely_reduce_factors(std::move(out));
}

std::vector<Conjugate> decompose_in_basis(const Word& w, const SubgroupLevel& L) {
  L.validate();
  if (L.level < 1) throw DomainError("basis decomposition needs level >= 1");
  const RewriteTrace trace = rewrite_to_transversal(w, L);
  if (!trace.residual.empty()) {
    throw NotAMember(reduce(w).str() + " is not in N_" + std::to_string(L.level));
  }
  std::vector<Conjugate> out;
  for (const auto& step : trace.steps) expand_into(step.conjugator, step.exponent, L, out);
  return freely_reduce_factors(std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

std::string cache_key(const Word& w) {
  std::string key;
  key.reserve(w.size());
  for (Letter a : w.letters()) key.push_back(static_cast<char>(a.code()));
  return key;
}

}  // namespace

MembershipOracle::MembershipOracle(int rank, std::size_t cache_bytes) : rank_(rank) {
  SubgroupLevel{rank, 0}.validate();
  const std::size_t per_level = cache_bytes / (kMaxLevel + 1);
  for (int k = 0; k <= kMaxLevel; ++k) caches_.push_back(std::make_unique<LruCache<bool>>(per_level));
}

bool MembershipOracle::is_member(const Word& w, int level) {
  SubgroupLevel{rank_, level}.validate();
  const Word rw = reduce(w);
  if (level == 0) return true;
  const std::string key = cache_key(rw);
  if (auto hit = caches_[level]->get(key)) return *hit;
  const bool answer = level == 1 ? deletion_image(rw).empty() : rewrite(rw, level).residual.empty();
  caches_[level]->put(key, answer);
  return answer;
}

RewriteTrace MembershipOracle::rewrite(const Word& w, int level) {
  SubgroupLevel{rank_, level}.validate();
  if (level < 1) throw DomainError("rewriting needs level >= 1");
  RewriteTrace trace;
  Word current = reduce(w);
  for (;;) {
    bool peeled = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!current[i].is_x()) continue;
      const Word v = current.prefix(i);
      if (!is_member(v, level - 1)) continue;
      trace.steps.push_back({v, current[i].sign()});
      current = reduce_product(v, current.suffix_from(i + 1));
      peeled = true;
      break;
    }
    if (!peeled) break;
  }
  trace.residual = std::move(current);
  return trace;
}

CacheStats MembershipOracle::cache_stats() const {
  CacheStats total;
  for (const auto& c : caches_) {
    const auto s = c->stats();
    total.hits += s.hits;
    total.misses += s.misses;
    total.evictions += s.evictions;
    total.bytes += s.bytes;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

struct TowerState {
  Tower::Node node = Tower::kRoot;
  bool non_x = false;
};

class NewElementPolicy {
 public:
  using State = TowerState;
  using Result = std::optional<NewElement>;

  NewElementPolicy(const SubgroupLevel& L, int bound, std::shared_ptr<std::atomic<int>> best)
      : tower_(L.rank, L.level), level_(L.level), bound_(bound), best_(std::move(best)),
        path_(static_cast<std::size_t>(bound) + 1) {}

  State root() const { return {}; }

  bool extend(const State& s, Letter a, int depth, State& out) {
    if (depth > best_->load(std::memory_order_relaxed)) return false;
    out.node = tower_.step(level_, s.node, a);
    if (tower_.length(level_, out.node) > bound_ - depth) return false;
    out.non_x = s.non_x || !a.is_x();
    path_[static_cast<std::size_t>(depth) - 1] = a;
    return true;
  }

  void visit(const State& s, int depth, Result& r) {
    if (!s.non_x || s.node != Tower::kRoot) return;
    if (r && r->length <= depth) return;
    r = NewElement{depth, Word(std::vector<Letter>(path_.begin(), path_.begin() + depth))};
    int cur = best_->load(std::memory_order_relaxed);
    while (depth < cur && !best_->compare_exchange_weak(cur, depth)) {
    }
  }

  Tower::Mark mark() const { return tower_.mark(); }
  void restore(const Tower::Mark& m) { tower_.restore(m); }

  static void merge(Result& into, const Result& shard) {
    if (shard && (!into || shard->length < into->length)) into = shard;
  }

 private:
  Tower tower_;
  int level_;
  int bound_;
  std::shared_ptr<std::atomic<int>> best_;
  std::vector<Letter> path_;
};

class GrowthPolicy {
 public:
  using State = Tower::Node;
  using Result = DepthCounts;

  GrowthPolicy(const SubgroupLevel& L, int nmax) : tower_(L.rank, L.level), level_(L.level), nmax_(nmax) {}

  State root() const { return Tower::kRoot; }

  bool extend(State s, Letter a, int depth, State& out) {
    out = tower_.step(level_, s, a);
    return tower_.length(level_, out) <= nmax_ - depth;
  }

  void visit(State s, int depth, Result& r) {
    if (s != Tower::kRoot) return;
    if (r.size() <= static_cast<std::size_t>(depth)) r.resize(static_cast<std::size_t>(depth) + 1, 0);
    ++r[static_cast<std::size_t>(depth)];
  }

  Tower::Mark mark() const { return tower_.mark(); }
  void restore(const Tower::Mark& m) { tower_.restore(m); }

  static void merge(Result& into, const Result& shard) { merge_depth_counts(into, shard); }

 private:
  Tower tower_;
  int level_;
  int nmax_;
};

void check_search_level(const SubgroupLevel& L) {
  L.validate();
  if (L.rank < 2) throw InvalidInput("the tower needs rank >= 2");
}

}  // namespace

std::optional<NewElement> min_new_length(const SubgroupLevel& L, int bound,
                                         const SearchOptions& options) {
  check_search_level(L);
  if (L.level < 1) throw DomainError("min_new_length needs level >= 1");
  if (bound < 1) throw DomainError("bound must be >= 1");
  if (bound > 60000) throw DomainError("bound too large");
  auto best = std::make_shared<std::atomic<int>>(std::numeric_limits<int>::max());
  return run_search(L.rank, bound, [&] { return NewElementPolicy(L, bound, best); }, options);
}

CountTable growth_table(const SubgroupLevel& L, int nmax, const SearchOptions& options) {
  check_search_level(L);
  if (nmax < 0) throw DomainError("nmax must be >= 0");
  if (L.level == 0) {
    std::vector<BigInt> spherical;
    for (int n = 0; n <= nmax; ++n) spherical.push_back(count_reduced(n, L.rank));
    return CountTable::from_spherical(std::move(spherical), nmax);
  }
  return counted_table(L.rank, nmax, [&] { return GrowthPolicy(L, nmax); }, options);
}

}  // namespace subnormal
