#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "beireg/binomial_edge.hpp"
#include "beireg/families.hpp"
#include "beireg/isomorphism.hpp"
#include "beireg/reg_formulas.hpp"

using namespace beireg;
using algebra::Ideal;

namespace {

Ideal ideal_of(const BiRing& r, std::vector<algebra::Poly> gens) { return Ideal{r, std::move(gens)}; }

std::vector<Graph> connected_upto(int n_max) {
  std::vector<Graph> out;
  for (int n = 2; n <= n_max; ++n)
    for (Graph& g : enumerate_connected_graphs(n)) out.push_back(std::move(g));
  return out;
}

}  // namespace

TEST(BinomialEdgeIdeal, Generators) {
  Ideal k2 = binomial_edge_ideal(complete_graph(2));
  ASSERT_EQ(k2.gens.size(), 1u);
  EXPECT_EQ(algebra::generator_strings(k2), (std::vector<std::string>{"-x2*y1 + x1*y2"}));
  EXPECT_EQ(binomial_edge_ideal(path_graph(3)).gens.size(), 2u);
  EXPECT_TRUE(binomial_edge_ideal(Graph(3)).gens.empty());
}

TEST(PrimeComponent, Examples) {
  Graph p3 = path_graph(3), p4 = path_graph(4);
  BiRing r3 = ring_for(p3), r4 = ring_for(p4);
  EXPECT_TRUE(algebra::ideal_equal(prime_component(p4, {}), binomial_edge_ideal(complete_graph(4))));
  EXPECT_TRUE(algebra::ideal_equal(prime_component(p3, {2}), ideal_of(r3, {r3.variable(r3.x(2)), r3.variable(r3.y(2))})));
  EXPECT_TRUE(algebra::ideal_equal(prime_component(p4, {3}),
                                   ideal_of(r4, {r4.variable(r4.x(3)), r4.variable(r4.y(3)), r4.minor(1, 2)})));
  EXPECT_THROW(prime_component(p3, {4}), InputError);
}

TEST(Herzog, Examples) {
  EXPECT_TRUE(herzog_check(complete_graph(4), HerzogFamily::CutPointSets));
  EXPECT_TRUE(herzog_check(path_graph(3), HerzogFamily::AllSubsets));
  EXPECT_TRUE(herzog_check(path_graph(4), HerzogFamily::CutPointSets));
  EXPECT_THROW(herzog_check(path_graph(6), HerzogFamily::AllSubsets), BudgetError);
  EXPECT_THROW(herzog_check(path_graph(7), HerzogFamily::CutPointSets), BudgetError);
}

TEST(Herzog, ProperSubfamilyFails) {
  // Dropping the component at T = {2} loses the intersection for P_3.
  Graph p3 = path_graph(3);
  EXPECT_FALSE(algebra::ideal_equal(prime_component(p3, {}), binomial_edge_ideal(p3)));
}

TEST(Split, PathOnThree) {
  VertexSplit s = ohtani_split(path_graph(3), 2);
  EXPECT_TRUE(s.intersection_holds);
  EXPECT_TRUE(s.sum_holds);
  EXPECT_TRUE(s.hilbert_additive);
}

TEST(Split, F3AtFive) {
  Graph f3 = make_F(3);
  VertexSplit s = ohtani_split(f3, 5);
  EXPECT_TRUE(s.all_hold());
  EXPECT_TRUE(algebra::ideal_equal(s.q1, binomial_edge_ideal(saturate_vertex(f3, 5))));
}

TEST(Split, FreeVertexRejected) {
  EXPECT_THROW(ohtani_split(complete_graph(3), 1), InputError);
  EXPECT_THROW(ohtani_split(path_graph(3), 1), InputError);
}

TEST(Oracle, Regularity) {
  EXPECT_EQ(regularity_oracle(path_graph(4)), 3);
  EXPECT_EQ(regularity_oracle(complete_graph(4)), 1);
  EXPECT_EQ(regularity_oracle(make_F(3)), 3);
  EXPECT_EQ(regularity_oracle(Graph(3)), 0);
  EXPECT_THROW(regularity_oracle(path_graph(8)), BudgetError);
  OracleOptions big;
  big.max_vertices = 8;
  EXPECT_EQ(regularity_oracle(path_graph(8), big), 7);
}

TEST(Oracle, DimensionAndCohenMacaulay) {
  OracleReport p3 = dimension_and_cm(path_graph(3));
  EXPECT_EQ(p3.dimension, 4);
  EXPECT_EQ(p3.projective_dimension, 2);
  EXPECT_EQ(p3.depth, 4);
  EXPECT_TRUE(p3.cohen_macaulay);
  EXPECT_TRUE(dimension_and_cm(make_F(2)).cohen_macaulay);
  EXPECT_TRUE(dimension_and_cm(make_F(3)).cohen_macaulay);
  EXPECT_TRUE(dimension_and_cm(make_k_fan(pure_fan(3, {{1, 2}}))).cohen_macaulay);
  EXPECT_FALSE(dimension_and_cm(cycle_graph(4)).cohen_macaulay);
  EXPECT_FALSE(dimension_and_cm(Graph(4, {{1, 2}, {1, 3}, {1, 4}})).cohen_macaulay);
}

TEST(Oracle, CombinatorialDimensionMatchesHilbertSeries) {
  for (const Graph& g : connected_upto(5)) {
    auto gb = algebra::groebner_basis(binomial_edge_ideal(g));
    EXPECT_EQ(combinatorial_dimension(g), algebra::krull_dimension(algebra::hilbert_numerator(gb), 2 * g.order()));
  }
}

TEST(Oracle, BoundsOnSmallGraphs) {
  for (const Graph& g : connected_upto(5)) {
    BettiTable t = betti_table(g);
    EXPECT_EQ(t.at(0, 0), 1);
    EXPECT_EQ(t.at(1, 2), static_cast<long long>(g.size()));
    for (const auto& [ij, b] : t.entries) {
      if (ij.first == 0) {
        EXPECT_EQ(ij.second, 0);
      }
      EXPECT_LE(ij.first, 2 * g.order());
    }
    int reg = regularity_of(t);
    EXPECT_GE(reg, longest_induced_path_length(g));
    EXPECT_LE(reg, g.order() - 1);
  }
}

TEST(Oracle, FormulaFamiliesWithinBudget) {
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(regularity_oracle(make_F(m)), reg_F(m));
  for (const FanSpec& s : {pure_fan(2, {{1}}), pure_fan(3, {{1}}), pure_fan(3, {{1, 2}}), pure_fan(3, {{1}, {2}}),
                           pure_fan(4, {{1}, {2}, {3}}), pure_fan(4, {{1, 2}}), pure_fan(5, {{1}, {2}})})
    EXPECT_EQ(regularity_oracle(make_k_fan(s)), s.k() + 1);
  EXPECT_EQ(regularity_oracle(eval_expr(expr_circ(expr_F(2), expr_F(2)))), reg_circ_pair(2, 2));
  EXPECT_EQ(regularity_oracle(eval_expr(expr_circ(expr_F(3), expr_F(2)))), reg_circ_pair(3, 2));
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 3 && 2 * a + 2 * b - 1 <= 7; ++b)
      EXPECT_EQ(regularity_oracle(eval_expr(expr_star(expr_F(a), expr_F(b)))), reg_F(a) + reg_F(b));
}

TEST(Oracle, SplitInequality) {
  for (const Graph& g : connected_upto(4))
    for (int v = 1; v <= g.order(); ++v) {
      if (is_free_vertex(g, v)) continue;
      EXPECT_TRUE(split_regularity(ohtani_split(g, v)).holds());
    }
}

TEST(Oracle, RelabelingAndPrimeInvariance) {
  std::mt19937_64 rng(21);
  OracleOptions small_prime;
  small_prime.prime = 101;
  for (const Graph& g : connected_upto(5)) {
    BettiTable t = betti_table(g);
    std::vector<int> perm(g.order());
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(betti_table(relabel(g, perm)).entries, t.entries);
    EXPECT_EQ(betti_table(g, small_prime).entries, t.entries);
  }
}
