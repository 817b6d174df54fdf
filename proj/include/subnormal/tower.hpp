#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "subnormal/word.hpp"

namespace subnormal {

// Deepest level of the subnormal tower the incremental oracle supports.
inline constexpr int kMaxLevel = 8;

// Incremental coset-representative tracker for the tower
//   F = N_0 > N_1 = <<x>>^F > N_2 = <<x>>^{N_1} > ...
//
// For a word w read letter by letter, the level-k state is the transversal
// representative res_k(w) in T_k of the coset N_k w, stored as a node of an
// append-only arena. Reading a letter a from representative r gives
//   r            if a = x^{+-1} and r lies in N_{k-1}  (x is peeled off),
//   parent(r)    if a cancels the last letter of r,
//   r a          otherwise.
// Membership of r in N_{k-1} is read off r's own level-(k-1) state, stored
// with the node. One letter therefore costs O(level) work.
//
// Arenas grow only when a new representative is created, so enumeration
// code can checkpoint with mark() and release a subtree with restore().
class Tower {
 public:
  using Node = std::int32_t;
  static constexpr Node kRoot = 0;

  struct Mark {
    std::array<std::int32_t, kMaxLevel + 1> sizes{};
  };

  // Tracks levels 1..top. A tower with top = 0 is valid and trivial.
  Tower(int rank, int top);

  int rank() const { return rank_; }
  int top() const { return top_; }

  // State after reading `a` from state `node` at `level` (1 <= level <= top).
  Node step(int level, Node node, Letter a);

  // Convenience: state of a whole word at `level`, starting from the root.
  Node walk(int level, std::span<const Letter> word);

  // Length of the representative held by the node.
  int length(int level, Node node) const { return arena_[level][node].depth; }

  // Whether the representative of the node lies in N_{level-1}.
  bool in_parent_subgroup(int level, Node node) const {
    return level == 1 || arena_[level][node].sub == kRoot;
  }

  // The representative word of a node.
  Word word(int level, Node node) const;
  Letter last_letter(int level, Node node) const { return arena_[level][node].letter; }
  Node parent(int level, Node node) const { return arena_[level][node].parent; }

  Mark mark() const;
  void restore(const Mark& m);

  std::size_t arena_size(int level) const { return arena_[level].size(); }

 private:
  struct Entry {
    Node parent;
    Node sub;  // level-(k-1) state of this representative
    Letter letter;
    std::uint16_t depth;
  };

  int rank_;
  int top_;
  std::array<std::vector<Entry>, kMaxLevel + 1> arena_;
};

}  // namespace subnormal
