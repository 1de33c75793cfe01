#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beireg/error.hpp"

namespace beireg {

using Mask = std::uint64_t;

inline constexpr int kMaxGraphOrder = 64;

inline Mask bit(int zero_based) { return Mask{1} << zero_based; }

inline Mask low_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Sorted, duplicate-free list of 1-based vertex labels.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<int> labels) : VertexSet(std::vector<int>(labels)) {}
  explicit VertexSet(std::vector<int> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
      throw InputError("vertex set contains a duplicate label");
  }

  static VertexSet from_mask(Mask m) {
    VertexSet s;
    for (; m != 0; m &= m - 1) s.labels_.push_back(std::countr_zero(m) + 1);
    return s;
  }

  Mask mask() const {
    Mask m = 0;
    for (int v : labels_) m |= bit(v - 1);
    return m;
  }

  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool contains(int v) const { return std::binary_search(labels_.begin(), labels_.end(), v); }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }
  int operator[](std::size_t i) const { return labels_[i]; }

  auto operator<=>(const VertexSet&) const = default;

 private:
  std::vector<int> labels_;
};

/// Finite simple graph on vertices 1..n. Edges are stored canonically
/// ({u,v} with u < v, sorted) so equal graphs compare and serialize equal.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxGraphOrder)
      throw InputError("graph order " + std::to_string(n) + " outside 0.." +
                       std::to_string(kMaxGraphOrder));
  }

  Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (const Edge& e : edges) add_edge_checked(e.u, e.v);
    finalize();
  }

  // Builds from adjacency masks (bit u-1 of masks[v-1] set iff u ~ v).
  static Graph from_masks(const std::vector<Mask>& masks) {
    Graph g(static_cast<int>(masks.size()));
    for (int v = 1; v <= g.n_; ++v)
      for (Mask m = masks[v - 1] & low_mask(v - 1); m != 0; m &= m - 1)
        g.add_edge_checked(std::countr_zero(m) + 1, v);
    g.finalize();
    return g;
  }

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  Mask vertex_mask() const { return low_mask(n_); }

  void check_vertex(int v) const {
    if (v < 1 || v > n_)
      throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
  }

  bool adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[u - 1] & bit(v - 1)) != 0;
  }

  Mask neighbor_mask(int v) const {
    check_vertex(v);
    return adj_[v - 1];
  }
  const std::vector<Mask>& adjacency() const { return adj_; }

  VertexSet neighbors(int v) const { return VertexSet::from_mask(neighbor_mask(v)); }
  VertexSet closed_neighborhood(int v) const {
    return VertexSet::from_mask(neighbor_mask(v) | bit(v - 1));
  }
  int degree(int v) const { return std::popcount(neighbor_mask(v)); }

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  void add_edge_checked(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (adj_[u - 1] & bit(v - 1))
      throw InputError("duplicate edge {" + std::to_string(std::min(u, v)) + "," +
                       std::to_string(std::max(u, v)) + "}");
    adj_[u - 1] |= bit(v - 1);
    adj_[v - 1] |= bit(u - 1);
  }

  void finalize() {
    edges_.clear();
    for (int u = 1; u <= n_; ++u)
      for (Mask m = adj_[u - 1] & ~low_mask(u); m != 0; m &= m - 1)
        edges_.push_back({u, std::countr_zero(m) + 1});
  }

  int n_ = 0;
  std::vector<Mask> adj_;
  std::vector<Edge> edges_;
};

/// Result of an operation that shrinks or merges vertex sets: the new graph
/// plus labels[i] = old label of new vertex i+1.
struct Relabeled {
  Graph graph;
  std::vector<int> labels;
};

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) e.push_back({u, v});
  return Graph(n, e);
}

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int u = 1; u < n; ++u) e.push_back({u, u + 1});
  return Graph(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int u = 1; u < n; ++u) e.push_back({u, u + 1});
  if (n >= 3) e.push_back({1, n});
  return Graph(n, e);
}

// Relabel by perm: vertex v becomes perm[v-1] (perm is a permutation of 1..n).
inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.order())
    throw InputError("permutation size does not match graph order");
  std::vector<Edge> e;
  for (const Edge& x : g.edges()) {
    int a = perm[x.u - 1], b = perm[x.v - 1];
    e.push_back({std::min(a, b), std::max(a, b)});
  }
  return Graph(g.order(), e);
}

inline Relabeled induced_subgraph(const Graph& g, const VertexSet& a) {
  std::vector<int> index(static_cast<std::size_t>(g.order()) + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    g.check_vertex(a[i]);
    index[a[i]] = static_cast<int>(i) + 1;
  }
  std::vector<Edge> e;
  for (const Edge& x : g.edges())
    if (index[x.u] && index[x.v]) e.push_back({index[x.u], index[x.v]});
  return {Graph(static_cast<int>(a.size()), e), a.labels()};
}

inline Relabeled induced_subgraph(const Graph& g, Mask a) {
  return induced_subgraph(g, VertexSet::from_mask(a & g.vertex_mask()));
}

inline Relabeled delete_vertex(const Graph& g, int v) {
  g.check_vertex(v);
  return induced_subgraph(g, g.vertex_mask() & ~bit(v - 1));
}

/// G_v: the neighborhood of v completed to a clique. Same vertex set.
inline Graph saturate_vertex(const Graph& g, int v) {
  Mask nb = g.neighbor_mask(v);
  std::vector<Mask> adj = g.adjacency();
  for (Mask m = nb; m != 0; m &= m - 1) {
    int u = std::countr_zero(m);
    adj[u] |= nb & ~bit(u);
  }
  return Graph::from_masks(adj);
}

inline bool is_clique(const Graph& g, Mask s) {
  for (Mask m = s; m != 0; m &= m - 1) {
    int u = std::countr_zero(m);
    if (((g.adjacency()[u] | bit(u)) & s) != s) return false;
  }
  return true;
}

namespace detail {

inline void bron_kerbosch(const std::vector<Mask>& adj, Mask r, Mask p, Mask x,
                          std::vector<Mask>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  // Pivot maximizing |P ∩ N(u)| over u ∈ P ∪ X.
  int pivot = -1, best = -1;
  for (Mask m = p | x; m != 0; m &= m - 1) {
    int u = std::countr_zero(m);
    int c = std::popcount(p & adj[u]);
    if (c > best) best = c, pivot = u;
  }
  for (Mask m = p & ~adj[pivot]; m != 0; m &= m - 1) {
    int v = std::countr_zero(m);
    bron_kerbosch(adj, r | bit(v), p & adj[v], x & adj[v], out);
    p &= ~bit(v);
    x |= bit(v);
  }
}

}  // namespace detail

/// Maximal cliques as vertex masks, in ascending order of their sorted label lists.
inline std::vector<Mask> maximal_clique_masks(const Graph& g) {
  std::vector<Mask> out;
  if (g.order() == 0) return out;
  detail::bron_kerbosch(g.adjacency(), 0, g.vertex_mask(), 0, out);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    return VertexSet::from_mask(a) < VertexSet::from_mask(b);
  });
  return out;
}

inline std::vector<VertexSet> maximal_cliques(const Graph& g) {
  std::vector<VertexSet> out;
  for (Mask m : maximal_clique_masks(g)) out.push_back(VertexSet::from_mask(m));
  return out;
}

inline int clique_count(const Graph& g) { return static_cast<int>(maximal_clique_masks(g).size()); }

/// Vertices lying in exactly one maximal clique. Equivalently N(v) is a clique.
inline VertexSet free_vertices(const Graph& g) {
  std::vector<int> out;
  for (int v = 1; v <= g.order(); ++v)
    if (is_clique(g, g.neighbor_mask(v))) out.push_back(v);
  return VertexSet(out);
}

inline bool is_free_vertex(const Graph& g, int v) {
  g.check_vertex(v);
  return is_clique(g, g.neighbor_mask(v));
}

/// Connected components of G[within], as masks ordered by smallest vertex.
inline std::vector<Mask> component_masks(const Graph& g, Mask within) {
  std::vector<Mask> out;
  Mask left = within & g.vertex_mask();
  while (left) {
    Mask comp = left & (~left + 1), frontier = comp;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      Mask fresh = g.adjacency()[u] & left & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

inline int component_count(const Graph& g, Mask within) {
  return static_cast<int>(component_masks(g, within).size());
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  for (Mask m : component_masks(g, g.vertex_mask())) out.push_back(VertexSet::from_mask(m));
  return out;
}

inline bool is_connected(const Graph& g) { return component_count(g, g.vertex_mask()) <= 1; }

inline bool is_cut_vertex(const Graph& g, int v) {
  g.check_vertex(v);
  Mask all = g.vertex_mask();
  return component_count(g, all & ~bit(v - 1)) > component_count(g, all);
}

/// Two-colouring witness: side[v-1] ∈ {0,1}; side of the smallest vertex of each
/// component is 0. Empty optional if G has an odd cycle.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  for (int s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (Mask m = g.adjacency()[u]; m != 0; m &= m - 1) {
        int w = std::countr_zero(m);
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

inline bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

namespace detail {

struct InducedPathSearch {
  const std::vector<Mask>& adj;
  int best = 0;

  // path ends at `last`; `blocked` = path ∪ N(path \ last); `len` edges so far.
  void extend(int last, Mask blocked, Mask reachable, int len) {
    best = std::max(best, len);
    Mask next = adj[last] & ~blocked;
    if (!next) return;
    // Optimistic bound: every still-reachable vertex joins the path.
    if (len + std::popcount(reachable & ~blocked) <= best) return;
    Mask blocked_next = blocked | adj[last];
    for (Mask m = next; m != 0; m &= m - 1) {
      int w = std::countr_zero(m);
      extend(w, blocked_next | bit(w), reachable, len + 1);
    }
  }
};

}  // namespace detail

/// Number of edges of a longest induced path; 0 for edgeless graphs.
inline int longest_induced_path_length(const Graph& g) {
  detail::InducedPathSearch search{g.adjacency()};
  for (Mask comp : component_masks(g, g.vertex_mask()))
    for (Mask m = comp; m != 0; m &= m - 1) {
      int s = std::countr_zero(m);
      search.extend(s, bit(s), comp, 0);
    }
  return search.best;
}

namespace detail {

// Tarjan's biconnected components with an edge stack.
struct BlockSearch {
  const std::vector<Mask>& adj;
  std::vector<int> disc, low;
  std::vector<std::pair<int, int>> stack;
  std::vector<Mask> blocks;
  int timer = 0;

  void visit(int u, int parent) {
    disc[u] = low[u] = ++timer;
    for (Mask m = adj[u]; m != 0; m &= m - 1) {
      int w = std::countr_zero(m);
      if (!disc[w]) {
        stack.emplace_back(u, w);
        visit(w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          Mask block = 0;
          std::pair<int, int> e;
          do {
            e = stack.back();
            stack.pop_back();
            block |= bit(e.first) | bit(e.second);
          } while (e != std::pair{u, w});
          blocks.push_back(block);
        }
      } else if (w != parent && disc[w] < disc[u]) {
        stack.emplace_back(u, w);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  }
};

}  // namespace detail

/// Vertex sets of the blocks (maximal 2-connected subgraphs and bridges);
/// isolated vertices belong to no block. Sorted by mask.
inline std::vector<Mask> block_masks(const Graph& g) {
  detail::BlockSearch s{g.adjacency(), std::vector<int>(g.order(), 0), std::vector<int>(g.order(), 0), {}, {}};
  for (int v = 0; v < g.order(); ++v)
    if (!s.disc[v]) s.visit(v, -1);
  std::sort(s.blocks.begin(), s.blocks.end());
  return s.blocks;
}

inline constexpr int kCutPointSetLimit = 20;

/// Masks T with the cut point property (every i ∈ T is a cut vertex of
/// G[(V \ T) ∪ {i}]), the empty set included, in increasing mask order.
inline std::vector<Mask> cut_point_set_masks(const Graph& g) {
  if (g.order() > kCutPointSetLimit)
    throw BudgetError("cut point sets are enumerated only for n <= " +
                      std::to_string(kCutPointSetLimit));
  Mask all = g.vertex_mask();
  std::vector<Mask> out;
  for (Mask t = 0; t <= all; ++t) {
    Mask rest = all & ~t;
    bool ok = true;
    for (Mask m = t; m != 0 && ok; m &= m - 1) {
      Mask with = rest | (m & (~m + 1));
      ok = component_count(g, rest) > component_count(g, with);
    }
    if (ok) out.push_back(t);
    if (t == all) break;
  }
  return out;
}

inline std::vector<VertexSet> cut_point_sets(const Graph& g) {
  std::vector<VertexSet> out;
  for (Mask t : cut_point_set_masks(g)) out.push_back(VertexSet::from_mask(t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace beireg
