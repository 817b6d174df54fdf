#include "subnormal/tower.hpp"

#include <algorithm>

#include "subnormal/error.hpp"

namespace subnormal {

Tower::Tower(int rank, int top) : rank_(rank), top_(top) {
  if (rank < 1 || rank > kMaxRank) throw InvalidInput("rank out of range");
  if (top < 0 || top > kMaxLevel) {
    throw InvalidInput("level must be in 0.." + std::to_string(kMaxLevel));
  }
  for (int k = 1; k <= top_; ++k) {
    arena_[k].reserve(1024);
    arena_[k].push_back(Entry{kRoot, kRoot, Letter{}, 0});
  }
}

Tower::Node Tower::step(int level, Node node, Letter a) {
  auto& arena = arena_[level];
  const Entry e = arena[node];
  if (a.is_x() && (level == 1 || e.sub == kRoot)) return node;
  if (e.depth > 0 && e.letter == a.inverse()) return e.parent;
  const Node sub = level == 1 ? kRoot : step(level - 1, e.sub, a);
  arena.push_back(Entry{node, sub, a, static_cast<std::uint16_t>(e.depth + 1)});
  return static_cast<Node>(arena.size() - 1);
}

Tower::Node Tower::walk(int level, std::span<const Letter> word) {
  Node n = kRoot;
  for (Letter a : word) n = step(level, n, a);
  return n;
}

Word Tower::word(int level, Node node) const {
  std::vector<Letter> letters(arena_[level][node].depth);
  for (Node n = node; arena_[level][n].depth > 0; n = arena_[level][n].parent) {
    letters[arena_[level][n].depth - 1] = arena_[level][n].letter;
  }
  return Word(std::move(letters));
}

Tower::Mark Tower::mark() const {
  Mark m;
  for (int k = 1; k <= top_; ++k) m.sizes[k] = static_cast<std::int32_t>(arena_[k].size());
  return m;
}

void Tower::restore(const Mark& m) {
  for (int k = 1; k <= top_; ++k) arena_[k].resize(static_cast<std::size_t>(m.sizes[k]));
}

}  // namespace subnormal
