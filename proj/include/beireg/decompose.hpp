#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "beireg/error.hpp"
#include "beireg/families.hpp"
#include "beireg/graph.hpp"
#include "beireg/isomorphism.hpp"

namespace beireg {

/// One *-part of a Cohen-Macaulay bipartite graph: F_n, or a circ-chain of
/// F_m's with every m >= 3.
struct CmPart {
  enum class Kind { F, Chain };
  Kind kind = Kind::F;
  std::vector<int> ms;  // {n} for F_n

  auto operator<=>(const CmPart&) const = default;
};

struct CmDecomposition {
  std::vector<CmPart> parts;  // sorted by (kind, parameters)
  std::vector<int> a_set, b_set, c_set;  // 1-based part indices
  // For each chain part i: positions j (1-based) of C_i and C_i'.
  std::map<int, std::vector<int>> chain_c, chain_c_prime;
  int alpha = 0;
  int beta = 0;
  ExprPtr expression;  // evaluates to a graph isomorphic to the input
};

enum class RejectReason {
  Edgeless,
  NotConnected,
  NotBipartite,
  BlocksNotAPath,
  EndBlockNotPendant,
  BlockNotFShaped,
  SharedPendantEdge,
  ChainEntryTooSmall,
  NotNormalForm,
};

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::Edgeless: return "edgeless";
    case RejectReason::NotConnected: return "not connected";
    case RejectReason::NotBipartite: return "not bipartite";
    case RejectReason::BlocksNotAPath: return "block structure is not a path";
    case RejectReason::EndBlockNotPendant: return "end block is not a pendant edge";
    case RejectReason::BlockNotFShaped: return "block does not match the F pattern";
    case RejectReason::SharedPendantEdge: return "adjacent chains share a pendant edge";
    case RejectReason::ChainEntryTooSmall: return "chain entry < 3";
    case RejectReason::NotNormalForm: return "expression outside the normal form";
  }
  return "unknown";
}

struct NotDecomposable {
  RejectReason reason;
  std::string detail;
};

using Recognition = std::variant<CmDecomposition, NotDecomposable>;

/// Positions j (1-based) of C_i for a chain: both ends and interior m >= 4.
inline std::vector<int> chain_c_positions(const std::vector<int>& ms) {
  std::vector<int> c;
  int t = static_cast<int>(ms.size());
  for (int j = 1; j <= t; ++j)
    if (j == 1 || j == t || ms[j - 1] >= 4) c.push_back(j);
  return c;
}

/// Chains read either way; keep the orientation with the least C_i, then
/// the least entries.
inline std::vector<int> orient_chain(const std::vector<int>& ms) {
  std::vector<int> rev(ms.rbegin(), ms.rend());
  auto key = [](const std::vector<int>& v) { return std::pair{chain_c_positions(v), v}; };
  return key(rev) < key(ms) ? rev : ms;
}

/// Fills the index sets and alpha/beta from `parts`, which it sorts.
inline void compute_statistics(CmDecomposition& d) {
  for (CmPart& p : d.parts)
    if (p.kind == CmPart::Kind::Chain) p.ms = orient_chain(p.ms);
  std::sort(d.parts.begin(), d.parts.end());
  d.a_set.clear(), d.b_set.clear(), d.c_set.clear();
  d.chain_c.clear(), d.chain_c_prime.clear();
  d.alpha = d.beta = 0;
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    const CmPart& p = d.parts[i];
    int idx = static_cast<int>(i) + 1;
    if (p.kind == CmPart::Kind::F) {
      if (p.ms[0] >= 2) d.a_set.push_back(idx), ++d.alpha;
      else d.b_set.push_back(idx), ++d.beta;
      continue;
    }
    d.c_set.push_back(idx);
    auto& c = d.chain_c[idx] = chain_c_positions(p.ms);
    auto& cp = d.chain_c_prime[idx];
    for (int j = 1; j <= static_cast<int>(p.ms.size()); ++j)
      if (!std::binary_search(c.begin(), c.end(), j)) cp.push_back(j);
    d.alpha += static_cast<int>(c.size());
    d.beta += static_cast<int>(cp.size());
  }
}

namespace detail {

// Path-order item for rebuilding an expression.
inline ExprPtr part_expr(const CmPart& p) {
  return p.kind == CmPart::Kind::F ? expr_F(p.ms[0]) : expr_circ_chain(p.ms);
}

inline std::vector<CmPart> reversed_items(const std::vector<CmPart>& items) {
  std::vector<CmPart> out(items.rbegin(), items.rend());
  for (CmPart& p : out) std::reverse(p.ms.begin(), p.ms.end());
  return out;
}

inline NotDecomposable reject(RejectReason r, std::string detail = {}) { return {r, std::move(detail)}; }

// Pendant edge count L between core runs, split into F_2's then F_1's.
inline void free_edges(int count, std::vector<CmPart>& items) {
  for (int k = 0; k < count / 3; ++k) items.push_back({CmPart::Kind::F, {2}});
  for (int k = 0; k < count % 3; ++k) items.push_back({CmPart::Kind::F, {1}});
}

}  // namespace detail

/// Recognizes connected Cohen-Macaulay bipartite graphs: *-products of F_n's
/// and circ-chains of F_m's (m >= 3). The block-cut tree of such a graph is a
/// path whose 2-connected blocks are the F-cores.
inline Recognition recognize_cm_bipartite(const Graph& g) {
  using detail::reject;
  if (g.size() == 0) return reject(RejectReason::Edgeless);
  if (!is_connected(g)) return reject(RejectReason::NotConnected);
  if (!is_bipartite(g)) return reject(RejectReason::NotBipartite);

  std::vector<Mask> blocks = block_masks(g);
  std::vector<int> owners(static_cast<std::size_t>(g.order()), 0);
  for (Mask b : blocks)
    for (Mask m = b; m; m &= m - 1) ++owners[std::countr_zero(m)];
  Mask cuts = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (owners[v] > 2)
      return reject(RejectReason::BlocksNotAPath, "vertex " + std::to_string(v + 1) + " lies in three blocks");
    if (owners[v] == 2) cuts |= bit(v);
  }
  for (Mask b : blocks)
    if (std::popcount(b & cuts) > 2) return reject(RejectReason::BlocksNotAPath, "a block has three cut vertices");

  // Walk the block path from an end.
  std::vector<Mask> order;
  {
    std::size_t start = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (std::popcount(blocks[i] & cuts) <= 1) {
        start = i;
        break;
      }
    std::vector<bool> used(blocks.size(), false);
    std::size_t cur = start;
    while (true) {
      used[cur] = true;
      order.push_back(blocks[cur]);
      std::size_t next = blocks.size();
      for (std::size_t i = 0; i < blocks.size(); ++i)
        if (!used[i] && (blocks[i] & blocks[cur] & cuts)) next = i;
      if (next == blocks.size()) break;
      cur = next;
    }
  }

  auto is_core = [](Mask b) { return std::popcount(b) > 2; };
  if (is_core(order.front()) || is_core(order.back())) return reject(RejectReason::EndBlockNotPendant);

  // Each core, with a pendant added at both ports, must be F_m.
  std::vector<int> core_m(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!is_core(order[i])) continue;
    Relabeled core = induced_subgraph(g, order[i]);
    int size = core.graph.order();
    if (size % 2) return reject(RejectReason::BlockNotFShaped, "odd block size");
    int m = size / 2 + 1;
    std::vector<Edge> e = core.graph.edges();
    int extra = size;
    for (std::size_t k = 0; k < core.labels.size(); ++k)
      if (cuts & bit(core.labels[k] - 1)) e.push_back({static_cast<int>(k) + 1, ++extra});
    Graph padded(extra, e);
    if (extra != 2 * m || !are_isomorphic(padded, make_F(m)))
      return reject(RejectReason::BlockNotFShaped, "block of size " + std::to_string(size));
    core_m[i] = m;
  }

  // Split into runs of cores and runs of pendant edges.
  std::vector<CmPart> items;
  std::size_t i = 0;
  int bridges = 0;
  bool seen_core = false;
  while (i < order.size()) {
    if (!core_m[i]) {
      ++bridges, ++i;
      continue;
    }
    std::vector<int> run;
    while (i < order.size() && core_m[i]) run.push_back(core_m[i++]);
    int own = seen_core ? 2 : 1;  // pendant edges that belong to the cores around the run
    if (bridges < own) return reject(RejectReason::SharedPendantEdge);
    detail::free_edges(bridges - own, items);
    items.push_back(run.size() == 1 ? CmPart{CmPart::Kind::F, {run[0]}} : CmPart{CmPart::Kind::Chain, run});
    bridges = 0;
    seen_core = true;
  }
  detail::free_edges(seen_core ? bridges - 1 : bridges, items);

  std::vector<CmPart> backward = detail::reversed_items(items);
  if (backward < items) items = backward;

  CmDecomposition d;
  std::vector<ExprPtr> exprs;
  for (const CmPart& p : items) exprs.push_back(detail::part_expr(p));
  d.expression = expr_chain(GlueOp::Star, exprs);
  d.parts = items;
  compute_statistics(d);
  return d;
}

// ---------------------------------------------------------------------------
// alpha and beta straight from a normal-form expression.

namespace detail {

struct ChainView {
  std::vector<int> ms;
  Graph graph;
  int front = 0, back = 0;  // pendant labels at the two ends of `ms`
};

inline std::optional<NotDecomposable> collect_chain(const ExprPtr& e, ChainView& out) {
  if (const auto* f = std::get_if<FLeaf>(&e->node)) {
    if (f->m < 3) return reject(RejectReason::ChainEntryTooSmall, "F(" + std::to_string(f->m) + ") in a chain");
    out = {{f->m}, make_F(f->m), 1, 2 * f->m};
    return std::nullopt;
  }
  const auto* node = std::get_if<GlueNode>(&e->node);
  if (!node || node->op != GlueOp::Circ) return reject(RejectReason::NotNormalForm, "chains may only contain F leaves");
  ChainView l, r;
  if (auto err = collect_chain(node->left, l)) return err;
  if (auto err = collect_chain(node->right, r)) return err;
  // DEFAULT designators as resolved by evaluation.
  Evaluated le = eval_expr_full(node->left), re = eval_expr_full(node->right);
  int f1 = node->f1.value_or(le.right_pendant.value_or(0));
  int f2 = node->f2.value_or(re.left_pendant.value_or(0));
  if (f1 == l.front) {
    std::reverse(l.ms.begin(), l.ms.end());
    std::swap(l.front, l.back);
  }
  if (f2 == r.back) {
    std::reverse(r.ms.begin(), r.ms.end());
    std::swap(r.front, r.back);
  }
  if (f1 != l.back || f2 != r.front) return reject(RejectReason::NotNormalForm, "circ must consume chain ends");
  Composed c = circ_compose(l.graph, f1, r.graph, f2);
  out.ms = l.ms;
  out.ms.insert(out.ms.end(), r.ms.begin(), r.ms.end());
  out.graph = std::move(c.graph);
  out.front = c.left_map[l.front - 1];
  out.back = c.right_map[r.back - 1];
  return std::nullopt;
}

inline std::optional<NotDecomposable> collect_parts(const ExprPtr& e, std::vector<CmPart>& parts) {
  if (const auto* f = std::get_if<FLeaf>(&e->node)) {
    parts.push_back({CmPart::Kind::F, {f->m}});
    return std::nullopt;
  }
  if (std::holds_alternative<FanLeaf>(e->node)) return reject(RejectReason::NotNormalForm, "fan leaf");
  const auto& node = std::get<GlueNode>(e->node);
  if (node.op == GlueOp::Star) {
    if (auto err = collect_parts(node.left, parts)) return err;
    return collect_parts(node.right, parts);
  }
  ChainView v;
  if (auto err = collect_chain(e, v)) return err;
  parts.push_back({CmPart::Kind::Chain, v.ms});
  return std::nullopt;
}

}  // namespace detail

/// alpha, beta and witness sets of a normal-form expression; the returned
/// decomposition keeps `e` as its expression.
inline Recognition alpha_beta(const ExprPtr& e) {
  if (!e) throw InputError("null expression");
  CmDecomposition d;
  if (auto err = detail::collect_parts(e, d.parts)) return *err;
  d.expression = e;
  compute_statistics(d);
  return d;
}

}  // namespace beireg
