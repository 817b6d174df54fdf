#pragma once

#include <cstddef>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

namespace subnormal {

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t evictions = 0;
  std::size_t bytes = 0;
};

// Thread-safe least-recently-used map from byte strings to values, bounded
// by an approximate byte budget (key bytes plus a fixed per-entry overhead).
template <typename Value>
class LruCache {
 public:
  explicit LruCache(std::size_t byte_budget) : budget_(byte_budget) {}

  std::optional<Value> get(const std::string& key) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) {
      ++stats_.misses;
      return std::nullopt;
    }
    ++stats_.hits;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
  }

  void put(const std::string& key, Value value) {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) {
      it->second->second = std::move(value);
      order_.splice(order_.begin(), order_, it->second);
      return;
    }
    const std::size_t cost = entry_cost(key);
    if (cost > budget_) return;
    order_.emplace_front(key, std::move(value));
    index_.emplace(key, order_.begin());
    stats_.bytes += cost;
    while (stats_.bytes > budget_) {
      auto& victim = order_.back();
      stats_.bytes -= entry_cost(victim.first);
      index_.erase(victim.first);
      order_.pop_back();
      ++stats_.evictions;
    }
  }

  CacheStats stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
  }

 private:
  static std::size_t entry_cost(const std::string& key) { return 2 * key.size() + 96; }

  using Entry = std::pair<std::string, Value>;
  std::size_t budget_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;
  std::unordered_map<std::string, typename std::list<Entry>::iterator> index_;
  CacheStats stats_;
};

}  // namespace subnormal
