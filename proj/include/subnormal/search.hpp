#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "subnormal/error.hpp"
#include "subnormal/word.hpp"

namespace subnormal {

inline constexpr std::uint64_t kDefaultNodeBudget = 500'000'000;

struct SearchOptions {
  int workers = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

// Shared node counter. A search aborts exactly when the number of nodes it
// would visit exceeds the limit, independent of thread interleaving: workers
// flush in batches and the final flush of every shard is always performed.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}

  // Returns false once the limit has been crossed.
  bool charge(std::uint64_t n) {
    const auto total = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (total > limit_) exhausted_.store(true, std::memory_order_relaxed);
    return !exhausted();
  }
  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exhausted_{false};
};

namespace detail {

struct Aborted {};

template <typename Policy>
class DfsRunner {
 public:
  using State = typename Policy::State;
  using Result = typename Policy::Result;

  DfsRunner(Policy& policy, int rank, int max_depth, NodeBudget& budget)
      : policy_(policy), alphabet_(2 * rank), max_depth_(max_depth), budget_(budget) {}

  void run(const State& s, int depth, int last_code, Result& out) {
    policy_.visit(s, depth, out);
    if (++pending_ >= kBatch) flush();
    if (depth == max_depth_) return;
    const auto mark = policy_.mark();
    State next;
    for (int code = 0; code < alphabet_; ++code) {
      if ((code ^ 1) == last_code) continue;
      if (policy_.extend(s, Letter::from_code(code), depth + 1, next)) {
        run(next, depth + 1, code, out);
      }
      policy_.restore(mark);
    }
  }

  void flush() {
    const bool ok = budget_.charge(pending_);
    pending_ = 0;
    if (!ok) throw Aborted{};
  }

 private:
  static constexpr std::uint64_t kBatch = 4096;
  Policy& policy_;
  int alphabet_;
  int max_depth_;
  NodeBudget& budget_;
  std::uint64_t pending_ = 0;
};

}  // namespace detail

// Depth-first search over reduced words of length <= max_depth, driven by a
// policy that carries incremental per-prefix state and may prune.
//
// Policy requirements:
//   using State; using Result;
//   State root();
//   bool extend(const State& s, Letter a, int depth, State& out);  // false prunes
//   void visit(const State& s, int depth, Result& r);
//   auto mark(); void restore(mark);      // scratch checkpoints
//   static void merge(Result& into, const Result& shard);
//
// With more than one worker the words of a fixed shard depth are split into
// shards processed in parallel; shard results are merged in lexicographic
// shard order. Throws BudgetExceeded when the visited node count would exceed
// the budget; the decision does not depend on scheduling.
template <typename Factory>
auto run_search(int rank, int max_depth, Factory&& make_policy, const SearchOptions& options)
    -> typename decltype(make_policy())::Result {
  using Policy = decltype(make_policy());
  using State = typename Policy::State;
  using Result = typename Policy::Result;

  NodeBudget budget(options.node_budget);
  const int workers = std::max(1, options.workers);

  int shard_depth = 0;
  if (workers > 1) {
    while (shard_depth < max_depth && count_reduced(shard_depth, rank) < 16 * workers) {
      ++shard_depth;
    }
  }

  // Head: nodes shallower than the shard depth, plus the list of shard roots.
  Policy head_policy = make_policy();
  Result head_result{};
  std::vector<std::vector<Letter>> shards;
  {
    std::vector<Letter> prefix;
    std::uint64_t head_nodes = 0;
    auto recurse = [&](auto& self, const State& s, int depth) -> void {
      if (depth == shard_depth) {
        shards.push_back(prefix);
        return;
      }
      head_policy.visit(s, depth, head_result);
      ++head_nodes;
      const auto mark = head_policy.mark();
      State next;
      for (int code = 0; code < 2 * rank; ++code) {
        const Letter a = Letter::from_code(code);
        if (!prefix.empty() && prefix.back() == a.inverse()) continue;
        if (head_policy.extend(s, a, depth + 1, next)) {
          prefix.push_back(a);
          self(self, next, depth + 1);
          prefix.pop_back();
        }
        head_policy.restore(mark);
      }
    };
    recurse(recurse, head_policy.root(), 0);
    if (!budget.charge(head_nodes)) {
      throw BudgetExceeded("node budget of " + std::to_string(budget.limit()) + " exhausted");
    }
  }

  std::vector<Result> shard_results(shards.size());
  std::atomic<std::size_t> next_shard{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    Policy policy = make_policy();
    detail::DfsRunner<Policy> runner(policy, rank, max_depth, budget);
    try {
      for (;;) {
        const std::size_t i = next_shard.fetch_add(1);
        if (i >= shards.size() || budget.exhausted()) break;
        State s = policy.root();
        const auto mark = policy.mark();
        bool alive = true;
        for (std::size_t d = 0; d < shards[i].size() && alive; ++d) {
          State next;
          alive = policy.extend(s, shards[i][d], static_cast<int>(d) + 1, next);
          s = next;
        }
        if (alive) {
          runner.run(s, shard_depth, shards[i].empty() ? -1 : shards[i].back().code(),
                     shard_results[i]);
        }
        policy.restore(mark);
      }
      runner.flush();
    } catch (const detail::Aborted&) {
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1 || shards.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(workers), shards.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (budget.exhausted()) {
    throw BudgetExceeded("node budget of " + std::to_string(budget.limit()) + " exhausted");
  }

  Result total = head_result;
  for (const auto& r : shard_results) Policy::merge(total, r);
  return total;
}

}  // namespace subnormal
