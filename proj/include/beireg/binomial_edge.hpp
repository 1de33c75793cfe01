#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "beireg/algebra/betti.hpp"
#include "beireg/algebra/hilbert.hpp"
#include "beireg/algebra/ideal.hpp"
#include "beireg/error.hpp"
#include "beireg/graph.hpp"

namespace beireg {

using algebra::BettiTable;
using algebra::BiRing;
using algebra::Ideal;
using algebra::PrimeField;

struct OracleOptions {
  std::uint32_t prime = PrimeField::kDefaultPrime;
  int max_vertices = 7;
  algebra::BettiOptions betti;
};

inline BiRing ring_for(const Graph& g, std::uint32_t prime = PrimeField::kDefaultPrime) {
  return BiRing(g.order(), PrimeField(prime));
}

/// The binomials x_i y_j - x_j y_i of a list of edges, inside a given ring.
inline Ideal edge_binomials(const BiRing& r, const std::vector<Edge>& edges) {
  Ideal out{r, {}};
  for (const Edge& e : edges) out.gens.push_back(r.minor(e.u, e.v));
  return out;
}

inline Ideal binomial_edge_ideal(const Graph& g, std::uint32_t prime = PrimeField::kDefaultPrime) {
  return edge_binomials(ring_for(g, prime), g.edges());
}

inline Ideal variables_of(const BiRing& r, Mask vertices) {
  Ideal out{r, {}};
  for (Mask m = vertices; m; m &= m - 1) {
    int v = std::countr_zero(m) + 1;
    out.gens.push_back(r.variable(r.x(v)));
    out.gens.push_back(r.variable(r.y(v)));
  }
  return out;
}

/// P_T(G): the variables of T plus the binomial edge ideals of the completed
/// components of G minus T.
inline Ideal prime_component(const Graph& g, const VertexSet& t, std::uint32_t prime = PrimeField::kDefaultPrime) {
  for (int v : t) g.check_vertex(v);
  BiRing r = ring_for(g, prime);
  Ideal out = variables_of(r, t.mask());
  for (Mask c : component_masks(g, g.vertex_mask() & ~t.mask()))
    for (Mask a = c; a; a &= a - 1)
      for (Mask b = a & (a - 1); b; b &= b - 1)
        out.gens.push_back(r.minor(std::countr_zero(a) + 1, std::countr_zero(b) + 1));
  return out;
}

enum class HerzogFamily { AllSubsets, CutPointSets };

inline constexpr int kHerzogAllSubsetsLimit = 5;
inline constexpr int kHerzogCutSetsLimit = 6;

/// True iff J_G equals the intersection of the P_T(G) over the family.
inline bool herzog_check(const Graph& g, HerzogFamily family, std::uint32_t prime = PrimeField::kDefaultPrime) {
  std::vector<Mask> sets;
  if (family == HerzogFamily::AllSubsets) {
    if (g.order() > kHerzogAllSubsetsLimit)
      throw BudgetError("all-subsets intersection limited to n <= " + std::to_string(kHerzogAllSubsetsLimit));
    for (Mask t = 0; t <= g.vertex_mask(); ++t) sets.push_back(t);
  } else {
    if (g.order() > kHerzogCutSetsLimit)
      throw BudgetError("cut-point-set intersection limited to n <= " + std::to_string(kHerzogCutSetsLimit));
    sets = cut_point_set_masks(g);
  }
  Ideal j = binomial_edge_ideal(g, prime);
  Ideal acc = prime_component(g, VertexSet::from_mask(sets.front()), prime);
  for (std::size_t k = 1; k < sets.size(); ++k)
    acc = algebra::ideal_intersect(acc, prime_component(g, VertexSet::from_mask(sets[k]), prime));
  return algebra::ideal_equal(acc, j);
}

// ---------------------------------------------------------------------------
// Splitting at a non-free vertex v: J_G = Q1 ∩ Q2 with Q1 = J_{G_v} and
// Q2 = (x_v, y_v) + J_{G \ v}, all in the original labels.

struct VertexSplit {
  Ideal whole, q1, q2, sum;
  Ideal expected_sum;  // (x_v, y_v) + J_{G_v \ v}
  bool intersection_holds = false;
  bool sum_holds = false;
  bool hilbert_additive = false;

  bool all_hold() const { return intersection_holds && sum_holds && hilbert_additive; }
};

inline std::vector<Edge> edges_avoiding(const Graph& g, int v) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (e.u != v && e.v != v) out.push_back(e);
  return out;
}

inline VertexSplit ohtani_split(const Graph& g, int v, std::uint32_t prime = PrimeField::kDefaultPrime) {
  g.check_vertex(v);
  if (is_free_vertex(g, v)) throw InputError("vertex " + std::to_string(v) + " is free; the split needs a non-free vertex");
  BiRing r = ring_for(g, prime);
  Graph gv = saturate_vertex(g, v);
  Ideal xy = variables_of(r, bit(v - 1));
  VertexSplit s;
  s.whole = edge_binomials(r, g.edges());
  s.q1 = edge_binomials(r, gv.edges());
  s.q2 = algebra::ideal_sum(xy, edge_binomials(r, edges_avoiding(g, v)));
  s.sum = algebra::ideal_sum(s.q1, s.q2);
  s.expected_sum = algebra::ideal_sum(xy, edge_binomials(r, edges_avoiding(gv, v)));
  s.intersection_holds = algebra::ideal_equal(s.whole, algebra::ideal_intersect(s.q1, s.q2));
  s.sum_holds = algebra::ideal_equal(s.sum, s.expected_sum);
  // 0 -> S/J_G -> S/Q1 ⊕ S/Q2 -> S/(Q1+Q2) -> 0 forces additive Hilbert series.
  auto hn = [](const Ideal& i) { return algebra::hilbert_numerator(algebra::groebner_basis(i)); };
  algebra::IntPoly rhs = algebra::poly_add(algebra::poly_add(hn(s.q1), hn(s.q2)), hn(s.sum), -1);
  s.hilbert_additive = hn(s.whole) == rhs;
  return s;
}

// ---------------------------------------------------------------------------
// Oracle entry points.

inline void check_oracle_budget(const Graph& g, const OracleOptions& opt) {
  if (g.order() > opt.max_vertices)
    throw BudgetError("graph has " + std::to_string(g.order()) + " vertices; the oracle budget is " +
                      std::to_string(opt.max_vertices));
}

inline BettiTable betti_table(const Graph& g, const OracleOptions& opt = {}) {
  check_oracle_budget(g, opt);
  return algebra::betti_table(binomial_edge_ideal(g, opt.prime), opt.betti);
}

/// reg(S/I); 0 for the zero ideal's quotient S.
inline int regularity_of(const BettiTable& t) { return t.regularity().value_or(0); }

inline int regularity_oracle(const Graph& g, const OracleOptions& opt = {}) { return regularity_of(betti_table(g, opt)); }

/// max over T in C(G) of n - |T| + (components of G minus T).
inline int combinatorial_dimension(const Graph& g) {
  int best = 0;
  for (Mask t : cut_point_set_masks(g)) {
    int d = g.order() - std::popcount(t) + component_count(g, g.vertex_mask() & ~t);
    best = std::max(best, d);
  }
  return best;
}

struct OracleReport {
  BettiTable betti;
  int regularity = 0;
  int projective_dimension = 0;
  int dimension = 0;
  int depth = 0;
  bool cohen_macaulay = false;
};

inline OracleReport dimension_and_cm(const Graph& g, const OracleOptions& opt = {}) {
  OracleReport out;
  out.betti = betti_table(g, opt);
  out.regularity = regularity_of(out.betti);
  out.projective_dimension = out.betti.projective_dimension();
  out.dimension = combinatorial_dimension(g);
  out.depth = 2 * g.order() - out.projective_dimension;
  out.cohen_macaulay = out.depth == out.dimension;
  return out;
}

// reg(S/J_G) <= max(max(reg S/Q1, reg S/Q2), reg S/(Q1+Q2) + 1), every term
// from the engine.
struct SplitRegularity {
  int whole = 0, q1 = 0, q2 = 0, sum = 0;
  bool holds() const { return whole <= std::max(std::max(q1, q2), sum + 1); }
};

inline SplitRegularity split_regularity(const VertexSplit& s, const OracleOptions& opt = {}) {
  auto reg = [&](const Ideal& i) { return regularity_of(algebra::betti_table(i, opt.betti)); };
  return {reg(s.whole), reg(s.q1), reg(s.q2), reg(s.sum)};
}

}  // namespace beireg
