#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "beireg/decompose.hpp"
#include "beireg/error.hpp"
#include "beireg/families.hpp"
#include "beireg/graph.hpp"

namespace beireg {

/// An exact regularity of S/J_G, or proven bounds, with the names of the
/// results that produced it.
struct RegResult {
  std::optional<int> value;
  int lower = 0;
  int upper = 0;
  std::vector<std::string> provenance;

  static RegResult exact(int v, std::vector<std::string> why) { return {v, v, v, std::move(why)}; }
  static RegResult bounds(int lo, int hi, std::vector<std::string> why) {
    if (lo > hi) throw std::logic_error("regularity bounds cross");
    if (lo == hi) return exact(lo, std::move(why));
    return {std::nullopt, lo, hi, std::move(why)};
  }
  bool is_exact() const { return value.has_value(); }
};

inline int reg_F(int m) {
  if (m < 1) throw InputError("reg_F needs m >= 1, got " + std::to_string(m));
  return m == 1 ? 1 : 3;
}

inline int sk_upper(const Graph& g) { return clique_count(g); }

struct MMBounds {
  int lower = 0;  // longest induced path
  int upper = 0;  // n - 1
};

inline MMBounds mm_bounds(const Graph& g) {
  if (g.size() == 0) throw InputError("regularity bounds need at least one edge");
  return {longest_induced_path_length(g), g.order() - 1};
}

inline RegResult fan_regularity(const FanSpec& spec) {
  spec.validate();
  int k = spec.k();
  if (spec.pure()) return RegResult::exact(k + 1, {"pure-fan"});
  int c = clique_count(make_k_fan(spec));
  if (spec.strictly_impure()) return RegResult::exact(c, {"fan-clique-bound"});
  return RegResult::bounds(k + 1, c, {"fan-lower", "fan-clique-bound"});
}

inline int reg_circ_pair(int m1, int m2) {
  if (m1 < 2 || m2 < 2) throw InputError("circ pair needs m1, m2 >= 2");
  return m1 >= 3 && m2 >= 3 ? 6 : 4;
}

/// F_m circ a pure k-fan, glued at a base vertex whose block has
/// `block_size` vertices.
inline int reg_fm_circ_fan(int m, const FanSpec& spec, int block_size) {
  spec.validate();
  if (!spec.pure()) throw InputError("F_m circ fan needs a pure fan");
  int k = spec.k();
  if (k < 1) throw InputError("F_m circ fan needs k >= 1");
  if (m < 2) throw InputError("F_m circ fan needs m >= 2");
  bool found = false, all_single = true;
  for (const FanBlock& b : spec.blocks) {
    found = found || static_cast<int>(b.base.size()) == block_size;
    all_single = all_single && b.base.size() == 1;
  }
  if (!found) throw InputError("no fan block has size " + std::to_string(block_size));
  if (m == 2) return k + 2;
  if (block_size >= 2) return k + 4;
  if (all_single) return k + 3;
  throw InputError("glue vertex in a singleton block while other blocks are larger: not covered");
}

struct FTail {
  int n = 3;
};
struct FanTail {
  FanSpec spec;
  int block_size = 2;
};
using ChainTail = std::variant<FTail, FanTail>;

/// F_{m_1} o ... o F_{m_t} o tail.
inline int reg_circ_chain(const std::vector<int>& ms, const ChainTail& tail) {
  if (ms.empty()) throw InputError("circ chain needs at least one F before the tail");
  for (int m : ms)
    if (m < 3) throw InputError("circ chain entries must be >= 3, got " + std::to_string(m));
  int sum = reg_F(ms[0] - 1);
  for (std::size_t i = 1; i < ms.size(); ++i) sum += reg_F(ms[i] - 2);
  if (const auto* f = std::get_if<FTail>(&tail)) {
    if (f->n < 3) throw InputError("F tail needs n >= 3");
    return sum + reg_F(f->n - 1);
  }
  const auto& fan = std::get<FanTail>(tail);
  fan.spec.validate();
  if (!fan.spec.pure() || fan.spec.k() < 1) throw InputError("fan tail must be a pure k-fan with k >= 1");
  if (fan.block_size < 2) throw InputError("fan tail needs the glue vertex in a block of size >= 2");
  return sum + fan.spec.k() + 1;
}

inline int reg_cm_bipartite(const CmDecomposition& d) { return 3 * d.alpha + d.beta; }

inline int reg_cm_bipartite(const ExprPtr& e) {
  Recognition r = alpha_beta(e);
  if (const auto* bad = std::get_if<NotDecomposable>(&r))
    throw InputError(std::string("not a normal-form expression: ") + to_string(bad->reason));
  return reg_cm_bipartite(std::get<CmDecomposition>(r));
}

// ---------------------------------------------------------------------------
// Dispatcher over expressions.

namespace detail {

inline const FLeaf* as_F(const ExprPtr& e) { return std::get_if<FLeaf>(&e->node); }
inline const FanLeaf* as_fan(const ExprPtr& e) { return std::get_if<FanLeaf>(&e->node); }
inline const GlueNode* as_glue(const ExprPtr& e) { return std::get_if<GlueNode>(&e->node); }

// Size of the fan block holding the neighbour of pendant `f`.
inline std::optional<int> fan_glue_block(const FanSpec& spec, int f) {
  Graph g = make_k_fan(spec);
  if (f < 1 || f > g.order() || g.degree(f) != 1) return std::nullopt;
  int v = std::countr_zero(g.neighbor_mask(f)) + 1;
  for (const FanBlock& b : spec.blocks)
    if (std::find(b.base.begin(), b.base.end(), v) != b.base.end()) return static_cast<int>(b.base.size());
  return std::nullopt;
}

// Flattens a circ subtree into its leaves when every inner node is a circ
// with DEFAULT designators (except at a fan leaf).
inline bool circ_leaves(const ExprPtr& e, std::vector<const GraphExpr*>& leaves, std::vector<const GlueNode*>& nodes) {
  if (!as_glue(e)) {
    leaves.push_back(e.get());
    return true;
  }
  const GlueNode* g = as_glue(e);
  if (g->op != GlueOp::Circ) return false;
  nodes.push_back(g);
  return circ_leaves(g->left, leaves, nodes) && circ_leaves(g->right, leaves, nodes);
}

inline RegResult sum_results(const std::vector<RegResult>& parts, std::string why) {
  int lo = 0, hi = 0;
  std::vector<std::string> prov{std::move(why)};
  for (const RegResult& p : parts) {
    lo += p.lower, hi += p.upper;
    for (const std::string& s : p.provenance)
      if (std::find(prov.begin(), prov.end(), s) == prov.end()) prov.push_back(s);
  }
  return RegResult::bounds(lo, hi, prov);
}

inline std::optional<RegResult> circ_formula(const GlueNode& node) {
  const FLeaf* l = as_F(node.left);
  const FLeaf* r = as_F(node.right);
  if (l && r && l->m >= 2 && r->m >= 2) return RegResult::exact(reg_circ_pair(l->m, r->m), {"circ-pair"});
  // F_m o fan or fan o F_m; the fan side needs an explicit pendant.
  const FanLeaf* fan = as_fan(node.right);
  const FLeaf* f = l;
  std::optional<int> pendant = node.f2;
  if (!fan) fan = as_fan(node.left), f = r, pendant = node.f1;
  if (fan && f && pendant && fan->spec.pure() && fan->spec.k() >= 1 && f->m >= 2) {
    if (auto size = fan_glue_block(fan->spec, *pendant)) {
      try {
        return RegResult::exact(reg_fm_circ_fan(f->m, fan->spec, *size), {"f-circ-fan"});
      } catch (const InputError&) {
        return std::nullopt;
      }
    }
  }
  // Longer chains of F's, possibly ending in a fan.
  std::vector<const GraphExpr*> leaves;
  std::vector<const GlueNode*> nodes;
  ExprPtr self = std::make_shared<const GraphExpr>(GraphExpr{node});
  if (!circ_leaves(self, leaves, nodes) || leaves.size() < 3) return std::nullopt;
  std::vector<int> ms;
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    const auto* leaf = std::get_if<FLeaf>(&leaves[i]->node);
    if (!leaf || leaf->m < 3) return std::nullopt;
    ms.push_back(leaf->m);
  }
  // Inner designators must be DEFAULT so the leaf order is the chain order.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool fan_side = std::holds_alternative<FanLeaf>(leaves.back()->node) && nodes[i] == nodes.front();
    if (nodes[i]->f1 || (nodes[i]->f2 && !fan_side)) return std::nullopt;
  }
  if (const auto* last = std::get_if<FLeaf>(&leaves.back()->node)) {
    if (last->m < 3) return std::nullopt;
    return RegResult::exact(reg_circ_chain(ms, FTail{last->m}), {"circ-chain"});
  }
  const auto& tail = std::get<FanLeaf>(leaves.back()->node);
  if (!nodes.front()->f2 || as_glue(nodes.front()->right)) return std::nullopt;
  auto size = fan_glue_block(tail.spec, *nodes.front()->f2);
  if (!size || *size < 2 || !tail.spec.pure() || tail.spec.k() < 1) return std::nullopt;
  return RegResult::exact(reg_circ_chain(ms, FanTail{tail.spec, *size}), {"circ-chain"});
}

}  // namespace detail

inline RegResult reg_formula(const ExprPtr& e);

/// Regularity of a graph from its recognized decomposition, else the
/// Matsuda-Murai bounds.
inline RegResult reg_formula(const Graph& g) {
  Recognition r = recognize_cm_bipartite(g);
  if (const auto* d = std::get_if<CmDecomposition>(&r)) return RegResult::exact(reg_cm_bipartite(*d), {"cm-bipartite", "decomposition"});
  if (g.size() == 0) return RegResult::exact(0, {"edgeless"});
  MMBounds b = mm_bounds(g);
  return RegResult::bounds(b.lower, b.upper, {"matsuda-murai"});
}

inline RegResult reg_formula(const ExprPtr& e) {
  if (!e) throw InputError("null expression");
  if (const FLeaf* f = detail::as_F(e)) return RegResult::exact(reg_F(f->m), {"reg-F"});
  if (const FanLeaf* fan = detail::as_fan(e)) return fan_regularity(fan->spec);
  const GlueNode& node = *detail::as_glue(e);
  // Normal-form expressions: 3 alpha + beta.
  Recognition normal = alpha_beta(e);
  if (const auto* d = std::get_if<CmDecomposition>(&normal)) {
    if (node.op == GlueOp::Circ && detail::as_F(node.left) && detail::as_F(node.right))
      return RegResult::exact(reg_cm_bipartite(*d), {"cm-bipartite", "circ-pair"});
    return RegResult::exact(reg_cm_bipartite(*d), {"cm-bipartite"});
  }
  if (node.op == GlueOp::Star) {
    eval_expr(e);  // surfaces gluing errors
    return detail::sum_results({reg_formula(node.left), reg_formula(node.right)}, "star-additivity");
  }
  if (auto r = detail::circ_formula(node)) {
    eval_expr(e);
    return *r;
  }
  return reg_formula(eval_expr(e));
}

}  // namespace beireg
