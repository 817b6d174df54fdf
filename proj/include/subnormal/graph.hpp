#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subnormal/table.hpp"
#include "subnormal/word.hpp"

namespace subnormal {

// Finite graph with involutive labelled edges. Positive edge i is stored as
// the directed edges 2i (u -> v, label a) and 2i+1 (v -> u, label a^{-1});
// the involution is e <-> e ^ 1. Labels of positive edges are positive
// generators.
class LabeledGraph {
 public:
  struct Edge {
    int from;
    int to;
    Letter label;
  };

  LabeledGraph() : LabeledGraph(1, 0, {}) {}

  // Vertices 0..n-1; each triple (u, v, a) adds an edge u -> v labelled a.
  // A negative label a is stored as v -> u labelled a^{-1}.
  struct PositiveEdge {
    int u;
    int v;
    Letter label;
  };
  LabeledGraph(int vertices, int base, std::vector<PositiveEdge> edges);

  int vertex_count() const { return vertices_; }
  int base() const { return base_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }  // directed
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  std::vector<PositiveEdge> positive_edges() const;

  // No two distinct directed edges with the same label leave one vertex.
  bool folded() const;
  bool connected() const;

  // Same graph with another base vertex.
  LabeledGraph with_base(int base) const;

  // Endpoint of the path from the base spelling w, if the path exists. In a
  // folded graph the path is unique.
  std::optional<int> trace(const Word& w) const;
  // w labels a closed path at the base (folded graphs).
  bool accepts(const Word& w) const;

  // Distances from v along edges in either direction; -1 if unreachable.
  std::vector<int> distances_from(int v) const;

  int max_generator() const;

  bool operator==(const LabeledGraph& other) const;

 private:
  int vertices_;
  int base_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
};

// Reads `vertices N base B` followed by one `u v label` line per edge.
LabeledGraph parse_graph(std::istream& in);
void write_graph(std::ostream& out, const LabeledGraph& g);

// The core graph of the subgroup generated by the words: a wedge of loops
// at the base, folded (lowest collision first), trimmed of hanging trees
// away from the base, and renumbered by breadth-first search from the base
// taking edges in label order.
LabeledGraph stallings_graph(const std::vector<Word>& generators, int rank);

// Folds an arbitrary graph the same way stallings_graph does.
LabeledGraph fold(const LabeledGraph& g);

// Reduced closed paths at the base: spherical counts for n = 0..nmax and the
// cumulative nu(n). Transfer recursion over directed edges:
//   c_{n+1}(f) = (sum of c_n(e) over e ending at start(f)) - c_n(f^{-1}).
CountTable count_reduced_closed_paths(const LabeledGraph& g, int nmax);

struct RatePoint {
  int n;
  double root;   // nu(n)^{1/n}
  double ratio;  // nu(n) / nu(n-1)
};
std::vector<RatePoint> rate_sequence(const CountTable& nu);

// For each non-tree positive edge e = (u, v) of a breadth-first spanning
// tree, the reduced label of p(u) e p(v)^{-1}; sorted lexicographically.
// Throws DomainError for a disconnected graph.
std::vector<Word> spanning_tree_basis(const LabeledGraph& g);

// phi(s) phi(t) <= (s + 1) phi(s + t + c) for all s, t >= 0 with
// s + t + c <= nmax(), phi = cumulative nu.
struct SubmultiplicativityResult {
  bool holds = true;
  int checked = 0;
  int bad_s = -1;
  int bad_t = -1;
};
SubmultiplicativityResult submultiplicativity_check(const CountTable& nu, int c);

// max(|q|, |q'|) for the two lexicographically first basis loops q, q'; empty
// when the fundamental group has rank < 2.
std::optional<int> submultiplicativity_constant(const LabeledGraph& g);

// nu(n) <= 2n + 1 for all computed n: the bound for cyclic or trivial groups.
bool linear_bound_check(const CountTable& nu);

// Graphs used throughout: rose with petals x_0..x_{k-1}, and a path.
LabeledGraph rose_graph(int petals);
LabeledGraph path_graph(int edges);

}  // namespace subnormal
