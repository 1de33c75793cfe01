#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "beireg/error.hpp"
#include "beireg/graph.hpp"

namespace beireg {

/// F_m on [2m]: edges {2i, 2j-1} for 1 <= i <= j <= m.
inline Graph make_F(int m) {
  if (m < 1) throw InputError("F_m needs m >= 1, got " + std::to_string(m));
  if (2 * m > kMaxGraphOrder) throw InputError("F_m too large for m = " + std::to_string(m));
  std::vector<Edge> e;
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      int a = 2 * i, b = 2 * j - 1;
      e.push_back({std::min(a, b), std::max(a, b)});
    }
  return Graph(2 * m, e);
}

/// One fan: base vertices v_1..v_r (in fan order) and branch clique sizes
/// a_1..a_r; branch j is a clique on {v_1..v_j} plus a_j - j fresh vertices.
struct FanBlock {
  std::vector<int> base;
  std::vector<int> sizes;

  bool pure() const {
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (sizes[j] != static_cast<int>(j) + 2) return false;
    return true;
  }
  bool strictly_impure() const {
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (sizes[j] <= static_cast<int>(j) + 2) return false;
    return true;
  }
};

/// k-fan of K_n: a fan on each of the pairwise disjoint blocks W_1..W_k.
struct FanSpec {
  int n = 0;
  std::vector<FanBlock> blocks;

  int k() const { return static_cast<int>(blocks.size()); }

  bool pure() const {
    for (const FanBlock& b : blocks)
      if (!b.pure()) return false;
    return true;
  }
  bool strictly_impure() const {
    for (const FanBlock& b : blocks)
      if (!b.strictly_impure()) return false;
    return true;
  }

  int vertex_count() const {
    int total = n;
    for (const FanBlock& b : blocks)
      for (std::size_t j = 0; j < b.sizes.size(); ++j) total += b.sizes[j] - static_cast<int>(j) - 1;
    return total;
  }

  void validate() const {
    if (n < 2) throw InputError("fan base K_n needs n >= 2, got " + std::to_string(n));
    Mask used = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const FanBlock& b = blocks[i];
      std::string where = "fan block " + std::to_string(i + 1);
      if (b.base.empty()) throw InputError(where + ": W_i must be nonempty");
      if (b.base.size() != b.sizes.size())
        throw InputError(where + ": |W_i| and number of branch sizes differ");
      for (std::size_t j = 0; j < b.base.size(); ++j) {
        int v = b.base[j];
        std::string at = where + ", branch " + std::to_string(j + 1);
        if (v < 1 || v > n) throw InputError(at + ": base vertex " + std::to_string(v) + " outside 1..n");
        if (used & bit(v - 1)) throw InputError(at + ": base vertex " + std::to_string(v) + " reused");
        used |= bit(v - 1);
        if (b.sizes[j] <= static_cast<int>(j) + 1)
          throw InputError(at + ": clique size a = " + std::to_string(b.sizes[j]) +
                           " must exceed j = " + std::to_string(j + 1));
      }
    }
    if (vertex_count() > kMaxGraphOrder) throw InputError("fan graph exceeds 64 vertices");
  }
};

/// Pure fan spec from the block vertex lists.
inline FanSpec pure_fan(int n, const std::vector<std::vector<int>>& blocks) {
  FanSpec s{n, {}};
  for (const auto& w : blocks) {
    FanBlock b{w, {}};
    for (std::size_t j = 0; j < w.size(); ++j) b.sizes.push_back(static_cast<int>(j) + 2);
    s.blocks.push_back(std::move(b));
  }
  return s;
}

struct FanGraph {
  Graph graph;
  // fresh[i][j] = labels of the fresh vertices of branch j of block i.
  std::vector<std::vector<std::vector<int>>> fresh;
};

inline FanGraph build_k_fan(const FanSpec& spec) {
  spec.validate();
  int total = spec.vertex_count();
  std::vector<Mask> adj(static_cast<std::size_t>(total), 0);
  auto make_clique = [&](Mask c) {
    for (Mask m = c; m != 0; m &= m - 1) adj[std::countr_zero(m)] |= c & ~(m & (~m + 1));
  };
  make_clique(low_mask(spec.n));
  FanGraph out;
  int next = spec.n + 1;
  for (const FanBlock& b : spec.blocks) {
    out.fresh.emplace_back();
    Mask prefix = 0;
    for (std::size_t j = 0; j < b.base.size(); ++j) {
      prefix |= bit(b.base[j] - 1);
      Mask clique = prefix;
      std::vector<int> fresh;
      for (int c = 0; c < b.sizes[j] - static_cast<int>(j) - 1; ++c) {
        fresh.push_back(next);
        clique |= bit(next - 1);
        ++next;
      }
      make_clique(clique);
      out.fresh.back().push_back(std::move(fresh));
    }
  }
  out.graph = Graph::from_masks(adj);
  return out;
}

inline Graph make_k_fan(const FanSpec& spec) { return build_k_fan(spec).graph; }

/// Gluing result: the graph plus where each operand's vertices went
/// (map[old-1] = new label, 0 when the vertex was removed).
struct Composed {
  Graph graph;
  std::vector<int> left_map;
  std::vector<int> right_map;
};

namespace detail {

inline Composed glue(const Graph& g1, int keep1, int drop1, const Graph& g2, int keep2,
                     int drop2) {
  Composed out;
  out.left_map.assign(static_cast<std::size_t>(g1.order()), 0);
  out.right_map.assign(static_cast<std::size_t>(g2.order()), 0);
  int next = 1;
  for (int v = 1; v <= g1.order(); ++v)
    if (v != drop1) out.left_map[v - 1] = next++;
  for (int v = 1; v <= g2.order(); ++v)
    if (v != drop2 && v != keep2) out.right_map[v - 1] = next++;
  out.right_map[keep2 - 1] = out.left_map[keep1 - 1];
  std::vector<Edge> e;
  auto add = [&](const Graph& g, const std::vector<int>& map) {
    for (const Edge& x : g.edges()) {
      int a = map[x.u - 1], b = map[x.v - 1];
      if (a && b) e.push_back({std::min(a, b), std::max(a, b)});
    }
  };
  add(g1, out.left_map);
  add(g2, out.right_map);
  out.graph = Graph(next - 1, e);
  return out;
}

}  // namespace detail

/// (G1,f1) * (G2,f2): identify the free vertices f1 and f2.
inline Composed star_compose(const Graph& g1, int f1, const Graph& g2, int f2) {
  g1.check_vertex(f1);
  g2.check_vertex(f2);
  if (!is_free_vertex(g1, f1))
    throw InputError("star: vertex " + std::to_string(f1) + " is not free in the left graph");
  if (!is_free_vertex(g2, f2))
    throw InputError("star: vertex " + std::to_string(f2) + " is not free in the right graph");
  return detail::glue(g1, f1, 0, g2, f2, 0);
}

/// (G1,f1) o (G2,f2): delete the pendant vertices f1, f2 and identify their
/// neighbours. Neighbour degree 2 is allowed unless `strict`, which requires 3.
inline Composed circ_compose(const Graph& g1, int f1, const Graph& g2, int f2, bool strict = false) {
  int min_degree = strict ? 3 : 2;
  auto attach = [&](const Graph& g, int f, const char* side) {
    g.check_vertex(f);
    if (g.degree(f) != 1)
      throw InputError(std::string("circ: vertex ") + std::to_string(f) + " is not pendant in the " +
                       side + " graph");
    int v = std::countr_zero(g.neighbor_mask(f)) + 1;
    if (g.degree(v) < min_degree)
      throw InputError(std::string("circ: neighbour ") + std::to_string(v) + " of pendant " +
                       std::to_string(f) + " in the " + side + " graph has degree " +
                       std::to_string(g.degree(v)) + " < " + std::to_string(min_degree));
    return v;
  };
  int v1 = attach(g1, f1, "left");
  int v2 = attach(g2, f2, "right");
  return detail::glue(g1, v1, f1, g2, v2, f2);
}

// ---------------------------------------------------------------------------
// Composition expressions

struct GraphExpr;
using ExprPtr = std::shared_ptr<const GraphExpr>;

enum class GlueOp { Star, Circ };

struct FLeaf {
  int m = 1;
};
struct FanLeaf {
  FanSpec spec;
};
/// Binary gluing node; unset f1/f2 mean DEFAULT attachment points.
struct GlueNode {
  GlueOp op = GlueOp::Star;
  ExprPtr left, right;
  std::optional<int> f1, f2;
};

struct GraphExpr {
  std::variant<FLeaf, FanLeaf, GlueNode> node;
};

inline ExprPtr expr_F(int m) { return std::make_shared<const GraphExpr>(GraphExpr{FLeaf{m}}); }
inline ExprPtr expr_fan(FanSpec s) {
  return std::make_shared<const GraphExpr>(GraphExpr{FanLeaf{std::move(s)}});
}
inline ExprPtr expr_glue(GlueOp op, ExprPtr l, ExprPtr r, std::optional<int> f1 = std::nullopt,
                         std::optional<int> f2 = std::nullopt) {
  if (!l || !r) throw InputError("gluing node needs two operands");
  return std::make_shared<const GraphExpr>(GraphExpr{GlueNode{op, std::move(l), std::move(r), f1, f2}});
}
inline ExprPtr expr_star(ExprPtr l, ExprPtr r, std::optional<int> f1 = std::nullopt,
                         std::optional<int> f2 = std::nullopt) {
  return expr_glue(GlueOp::Star, std::move(l), std::move(r), f1, f2);
}
inline ExprPtr expr_circ(ExprPtr l, ExprPtr r, std::optional<int> f1 = std::nullopt,
                         std::optional<int> f2 = std::nullopt) {
  return expr_glue(GlueOp::Circ, std::move(l), std::move(r), f1, f2);
}

/// Left-nested chain e1 op e2 op ... with DEFAULT attachments.
inline ExprPtr expr_chain(GlueOp op, const std::vector<ExprPtr>& parts) {
  if (parts.empty()) throw InputError("empty chain");
  ExprPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = expr_glue(op, acc, parts[i]);
  return acc;
}
inline ExprPtr expr_circ_chain(const std::vector<int>& ms) {
  std::vector<ExprPtr> parts;
  for (int m : ms) parts.push_back(expr_F(m));
  return expr_chain(GlueOp::Circ, parts);
}

struct EvalOptions {
  bool strict_circ = false;
};

struct Evaluated {
  Graph graph;
  // DEFAULT attachment points: F_m leaves expose 1 (left) and 2m (right).
  std::optional<int> left_pendant, right_pendant;
  // leaves[i][old-1] = label in `graph` of vertex `old` of leaf i
  // (leaves in left-to-right order; 0 when removed by a circ).
  std::vector<std::vector<int>> leaves;
};

namespace detail {

inline std::optional<int> survive(std::optional<int> v, const std::vector<int>& map, int consumed) {
  if (!v || *v == consumed) return std::nullopt;
  int to = map[*v - 1];
  return to ? std::optional<int>(to) : std::nullopt;
}

inline Evaluated eval(const GraphExpr& e, const EvalOptions& opt) {
  if (const auto* f = std::get_if<FLeaf>(&e.node)) {
    Evaluated out{make_F(f->m), 1, 2 * f->m, {}};
    std::vector<int> id(2 * f->m);
    for (int v = 1; v <= 2 * f->m; ++v) id[v - 1] = v;
    out.leaves.push_back(std::move(id));
    return out;
  }
  if (const auto* fan = std::get_if<FanLeaf>(&e.node)) {
    Evaluated out{make_k_fan(fan->spec), std::nullopt, std::nullopt, {}};
    std::vector<int> id(out.graph.order());
    for (int v = 1; v <= out.graph.order(); ++v) id[v - 1] = v;
    out.leaves.push_back(std::move(id));
    return out;
  }
  const auto& node = std::get<GlueNode>(e.node);
  const char* name = node.op == GlueOp::Star ? "star" : "circ";
  Evaluated l = eval(*node.left, opt), r = eval(*node.right, opt);
  std::optional<int> f1 = node.f1 ? node.f1 : l.right_pendant;
  std::optional<int> f2 = node.f2 ? node.f2 : r.left_pendant;
  if (!f1)
    throw InputError(std::string(name) + ": left operand has no DEFAULT attachment; give f1 explicitly");
  if (!f2)
    throw InputError(std::string(name) + ": right operand has no DEFAULT attachment; give f2 explicitly");
  Composed c = node.op == GlueOp::Star ? star_compose(l.graph, *f1, r.graph, *f2)
                                       : circ_compose(l.graph, *f1, r.graph, *f2, opt.strict_circ);
  Evaluated out;
  out.graph = std::move(c.graph);
  // Prefer the outer pendant of each operand; fall back to the inner one if
  // the outer one was consumed by this gluing.
  out.left_pendant = survive(l.left_pendant, c.left_map, *f1);
  if (!out.left_pendant) out.left_pendant = survive(l.right_pendant, c.left_map, *f1);
  out.right_pendant = survive(r.right_pendant, c.right_map, *f2);
  if (!out.right_pendant) out.right_pendant = survive(r.left_pendant, c.right_map, *f2);
  for (auto& leaf : l.leaves) {
    for (int& v : leaf) v = v ? c.left_map[v - 1] : 0;
    out.leaves.push_back(std::move(leaf));
  }
  for (auto& leaf : r.leaves) {
    for (int& v : leaf) v = v ? c.right_map[v - 1] : 0;
    out.leaves.push_back(std::move(leaf));
  }
  return out;
}

}  // namespace detail

inline Evaluated eval_expr_full(const ExprPtr& e, const EvalOptions& opt = {}) {
  if (!e) throw InputError("null expression");
  return detail::eval(*e, opt);
}

inline Graph eval_expr(const ExprPtr& e, const EvalOptions& opt = {}) {
  return eval_expr_full(e, opt).graph;
}

}  // namespace beireg
