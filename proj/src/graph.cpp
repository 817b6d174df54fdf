#include "subnormal/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "subnormal/error.hpp"

namespace subnormal {

LabeledGraph::LabeledGraph(int vertices, int base, std::vector<PositiveEdge> edges)
    : vertices_(vertices), base_(base) {
  if (vertices < 1) throw InvalidInput("a graph needs at least one vertex");
  if (base < 0 || base >= vertices) throw InvalidInput("base vertex out of range");
  out_.resize(static_cast<std::size_t>(vertices));
  edges_.reserve(2 * edges.size());
  for (auto e : edges) {
    if (e.u < 0 || e.u >= vertices || e.v < 0 || e.v >= vertices) {
      throw InvalidInput("edge endpoint out of range");
    }
    if (e.label.sign() < 0) {
      std::swap(e.u, e.v);
      e.label = e.label.inverse();
    }
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({e.u, e.v, e.label});
    edges_.push_back({e.v, e.u, e.label.inverse()});
    out_[static_cast<std::size_t>(e.u)].push_back(id);
    out_[static_cast<std::size_t>(e.v)].push_back(id + 1);
  }
}

std::vector<LabeledGraph::PositiveEdge> LabeledGraph::positive_edges() const {
  std::vector<PositiveEdge> out;
  for (std::size_t i = 0; i < edges_.size(); i += 2) {
    out.push_back({edges_[i].from, edges_[i].to, edges_[i].label});
  }
  return out;
}

bool LabeledGraph::folded() const {
  for (const auto& out : out_) {
    std::vector<int> labels;
    for (int e : out) labels.push_back(edge(e).label.code());
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

std::vector<int> LabeledGraph::distances_from(int v) const {
  std::vector<int> dist(static_cast<std::size_t>(vertices_), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(v)] = 0;
  q.push(v);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int e : out_edges(u)) {
      const int t = edge(e).to;
      if (dist[static_cast<std::size_t>(t)] < 0) {
        dist[static_cast<std::size_t>(t)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(t);
      }
    }
  }
  return dist;
}

bool LabeledGraph::connected() const {
  const auto d = distances_from(base_);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

LabeledGraph LabeledGraph::with_base(int base) const {
  return LabeledGraph(vertices_, base, positive_edges());
}

std::optional<int> LabeledGraph::trace(const Word& w) const {
  int v = base_;
  for (Letter a : w.letters()) {
    bool moved = false;
    for (int e : out_edges(v)) {
      if (edge(e).label == a) {
        v = edge(e).to;
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  return v;
}

bool LabeledGraph::accepts(const Word& w) const {
  const auto end = trace(reduce(w));
  return end && *end == base_;
}

int LabeledGraph::max_generator() const {
  int g = -1;
  for (const auto& e : edges_) g = std::max(g, e.label.generator());
  return g;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
  if (vertices_ != other.vertices_ || base_ != other.base_ || edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& a = edges_[i];
    const auto& b = other.edges_[i];
    if (a.from != b.from || a.to != b.to || a.label != b.label) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LabeledGraph parse_graph(std::istream& in) {
  std::string line;
  int vertices = -1;
  int base = 0;
  std::vector<LabeledGraph::PositiveEdge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string where = "graph line " + std::to_string(line_no) + ": ";
    if (vertices < 0) {
      std::string base_kw;
      if (first != "vertices" || !(ls >> vertices >> base_kw >> base) || base_kw != "base") {
        throw InvalidInput(where + "expected 'vertices N base B'");
      }
      continue;
    }
    int u = 0;
    int v = 0;
    std::string label;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw InvalidInput(where + "bad vertex '" + first + "'");
    }
    if (!(ls >> v >> label)) throw InvalidInput(where + "expected 'u v label'");
    const Word w = Word::parse(label, kMaxRank);
    if (w.size() != 1) throw InvalidInput(where + "label must be a single letter");
    edges.push_back({u, v, w[0]});
  }
  if (vertices < 0) throw InvalidInput("empty graph file");
  return LabeledGraph(vertices, base, std::move(edges));
}

void write_graph(std::ostream& out, const LabeledGraph& g) {
  out << "vertices " << g.vertex_count() << " base " << g.base() << '\n';
  for (const auto& e : g.positive_edges()) {
    out << e.u << ' ' << e.v << ' ' << generator_char(e.label.generator()) << '\n';
  }
}

// ---------------------------------------------------------------------------

namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<std::size_t>(v)] != v) {
    parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    v = parent[static_cast<std::size_t>(v)];
  }
  return v;
}

}  // namespace

LabeledGraph fold(const LabeledGraph& g) {
  std::vector<LabeledGraph::PositiveEdge> edges = g.positive_edges();
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);

  for (;;) {
    // Directed edge d is positive edge d/2, read forwards when d is even.
    auto target = [&](std::size_t d) {
      const auto& e = edges[d / 2];
      return find_root(parent, d % 2 ? e.u : e.v);
    };
    std::map<std::pair<int, int>, std::size_t> seen;  // (vertex, label) -> directed edge
    bool collided = false;
    for (std::size_t d = 0; d < 2 * edges.size() && !collided; ++d) {
      const auto& e = edges[d / 2];
      const int from = find_root(parent, d % 2 ? e.v : e.u);
      const int label = e.label.code() ^ static_cast<int>(d % 2);
      auto [it, inserted] = seen.emplace(std::pair(from, label), d);
      if (inserted) continue;
      const int a = std::min(target(it->second), target(d));
      const int b = std::max(target(it->second), target(d));
      parent[static_cast<std::size_t>(b)] = a;
      edges.erase(edges.begin() + static_cast<long>(d / 2));
      collided = true;
    }
    if (!collided) break;
  }
  for (auto& e : edges) {
    e.u = find_root(parent, e.u);
    e.v = find_root(parent, e.v);
  }

  // Trim hanging trees away from the base.
  const int base = find_root(parent, g.base());
  std::vector<bool> alive(static_cast<std::size_t>(g.vertex_count()), false);
  for (int v = 0; v < g.vertex_count(); ++v) alive[static_cast<std::size_t>(v)] = find_root(parent, v) == v;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& e : edges) {
      ++degree[static_cast<std::size_t>(e.u)];
      ++degree[static_cast<std::size_t>(e.v)];
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (alive[static_cast<std::size_t>(v)] && v != base && degree[static_cast<std::size_t>(v)] <= 1) {
        alive[static_cast<std::size_t>(v)] = false;
        changed = true;
      }
    }
    std::erase_if(edges, [&](const auto& e) {
      return !alive[static_cast<std::size_t>(e.u)] || !alive[static_cast<std::size_t>(e.v)];
    });
  }

  // Canonical numbering: breadth-first from the base, out-edges by label.
  const LabeledGraph merged(g.vertex_count(), base, edges);
  std::vector<int> order(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  std::queue<int> q;
  order[static_cast<std::size_t>(base)] = next++;
  q.push(base);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    std::vector<int> out = merged.out_edges(u);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return merged.edge(a).label.code() < merged.edge(b).label.code() ||
             (merged.edge(a).label == merged.edge(b).label && a < b);
    });
    for (int e : out) {
      const int t = merged.edge(e).to;
      if (order[static_cast<std::size_t>(t)] < 0) {
        order[static_cast<std::size_t>(t)] = next++;
        q.push(t);
      }
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (alive[static_cast<std::size_t>(v)] && order[static_cast<std::size_t>(v)] < 0) {
      order[static_cast<std::size_t>(v)] = next++;
    }
  }
  for (auto& e : edges) {
    e.u = order[static_cast<std::size_t>(e.u)];
    e.v = order[static_cast<std::size_t>(e.v)];
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.u, a.label.code(), a.v) < std::tuple(b.u, b.label.code(), b.v);
  });
  return LabeledGraph(next, 0, std::move(edges));
}

LabeledGraph stallings_graph(const std::vector<Word>& generators, int rank) {
  if (rank < 1 || rank > kMaxRank) throw InvalidInput("rank out of range");
  std::vector<LabeledGraph::PositiveEdge> edges;
  int vertices = 1;
  for (const auto& raw : generators) {
    if (raw.max_generator() >= rank) throw InvalidGenerator("generator uses a letter outside the rank");
    const Word w = reduce(raw);
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int to = i + 1 == w.size() ? 0 : vertices++;
      edges.push_back({cur, to, w[i]});
      cur = to;
    }
  }
  return fold(LabeledGraph(vertices, 0, std::move(edges)));
}

// ---------------------------------------------------------------------------

CountTable count_reduced_closed_paths(const LabeledGraph& g, int nmax) {
  if (nmax < 0) throw DomainError("nmax must be >= 0");
  const auto E = static_cast<std::size_t>(g.edge_count());
  std::vector<BigInt> c(E), next(E), into(static_cast<std::size_t>(g.vertex_count()));
  std::vector<BigInt> spherical{1};
  for (int n = 1; n <= nmax; ++n) {
    if (n == 1) {
      for (std::size_t e = 0; e < E; ++e) c[e] = g.edge(static_cast<int>(e)).from == g.base() ? 1 : 0;
    } else {
      for (auto& s : into) s = 0;
      for (std::size_t e = 0; e < E; ++e) into[static_cast<std::size_t>(g.edge(static_cast<int>(e)).to)] += c[e];
      for (std::size_t f = 0; f < E; ++f) {
        next[f] = into[static_cast<std::size_t>(g.edge(static_cast<int>(f)).from)] - c[f ^ 1];
      }
      std::swap(c, next);
    }
    BigInt closed = 0;
    for (std::size_t e = 0; e < E; ++e) {
      if (g.edge(static_cast<int>(e)).to == g.base()) closed += c[e];
    }
    spherical.push_back(closed);
  }
  return CountTable::from_spherical(std::move(spherical), nmax);
}

std::vector<RatePoint> rate_sequence(const CountTable& nu) {
  std::vector<RatePoint> out;
  for (int n = 1; n <= nu.nmax(); ++n) {
    const double ln = log_of(nu[n]);
    out.push_back({n, std::exp(ln / n), std::exp(ln - log_of(nu[n - 1]))});
  }
  return out;
}

std::vector<Word> spanning_tree_basis(const LabeledGraph& g) {
  if (!g.connected()) throw DomainError("graph is not connected");
  const auto V = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> tree_edge(V, -1);
  std::vector<Word> path(V);
  std::vector<bool> seen(V, false);
  std::queue<int> q;
  seen[static_cast<std::size_t>(g.base())] = true;
  q.push(g.base());
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    std::vector<int> out = g.out_edges(u);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return std::pair(g.edge(a).label.code(), a) < std::pair(g.edge(b).label.code(), b);
    });
    for (int e : out) {
      const auto t = static_cast<std::size_t>(g.edge(e).to);
      if (seen[t]) continue;
      seen[t] = true;
      tree_edge[t] = e;
      path[t] = reduce_product(path[static_cast<std::size_t>(u)], Word({g.edge(e).label}));
      q.push(g.edge(e).to);
    }
  }
  std::vector<bool> in_tree(static_cast<std::size_t>(g.edge_count() / 2), false);
  for (int e : tree_edge) {
    if (e >= 0) in_tree[static_cast<std::size_t>(e / 2)] = true;
  }
  std::vector<Word> basis;
  for (int i = 0; i < g.edge_count() / 2; ++i) {
    if (in_tree[static_cast<std::size_t>(i)]) continue;
    const auto& e = g.edge(2 * i);
    const Word loop = reduce_product(path[static_cast<std::size_t>(e.from)], Word({e.label}));
    basis.push_back(reduce_product(loop, path[static_cast<std::size_t>(e.to)].inverse()));
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

SubmultiplicativityResult submultiplicativity_check(const CountTable& nu, int c) {
  SubmultiplicativityResult r;
  for (int s = 0; s + c <= nu.nmax(); ++s) {
    for (int t = 0; s + t + c <= nu.nmax(); ++t) {
      ++r.checked;
      if (nu[s] * nu[t] > BigInt(s + 1) * nu[s + t + c]) {
        if (r.holds) {
          r.bad_s = s;
          r.bad_t = t;
        }
        r.holds = false;
      }
    }
  }
  return r;
}

std::optional<int> submultiplicativity_constant(const LabeledGraph& g) {
  const auto basis = spanning_tree_basis(g);
  if (basis.size() < 2) return std::nullopt;
  return static_cast<int>(std::max(basis[0].size(), basis[1].size()));
}

bool linear_bound_check(const CountTable& nu) {
  for (int n = 0; n <= nu.nmax(); ++n) {
    if (nu[n] > 2 * n + 1) return false;
  }
  return true;
}

LabeledGraph rose_graph(int petals) {
  if (petals < 0 || petals > kMaxRank) throw InvalidInput("petal count out of range");
  std::vector<LabeledGraph::PositiveEdge> edges;
  for (int g = 0; g < petals; ++g) edges.push_back({0, 0, Letter(g, 1)});
  return LabeledGraph(1, 0, std::move(edges));
}

LabeledGraph path_graph(int edge_count) {
  if (edge_count < 0) throw InvalidInput("edge count must be >= 0");
  std::vector<LabeledGraph::PositiveEdge> edges;
  for (int i = 0; i < edge_count; ++i) edges.push_back({i, i + 1, kX});
  return LabeledGraph(edge_count + 1, 0, std::move(edges));
}

}  // namespace subnormal
