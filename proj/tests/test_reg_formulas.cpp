#include <gtest/gtest.h>

#include <random>

#include "beireg/families.hpp"
#include "beireg/random_expr.hpp"
#include "beireg/reg_formulas.hpp"

using namespace beireg;

namespace {

int exact(const RegResult& r) {
  EXPECT_TRUE(r.is_exact());
  return r.value.value_or(-1);
}

bool mentions(const RegResult& r, const std::string& why) {
  return std::find(r.provenance.begin(), r.provenance.end(), why) != r.provenance.end();
}

int first_pendant(const Graph& g) {
  for (int v = 1; v <= g.order(); ++v)
    if (g.degree(v) == 1) return v;
  return 0;
}

}  // namespace

TEST(RegF, Values) {
  EXPECT_EQ(reg_F(1), 1);
  EXPECT_EQ(reg_F(2), 3);
  EXPECT_EQ(reg_F(7), 3);
  EXPECT_THROW(reg_F(0), InputError);
}

TEST(FanRegularity, Pure) {
  for (const FanSpec& s : {pure_fan(2, {{1}}), pure_fan(4, {{1, 2}, {3}}), pure_fan(6, {{1, 2, 3}, {4, 5}}),
                           pure_fan(5, {{1}, {2}, {3}, {4}})}) {
    RegResult r = fan_regularity(s);
    EXPECT_EQ(exact(r), s.k() + 1);
    EXPECT_TRUE(mentions(r, "pure-fan"));
    Graph g = make_k_fan(s);
    EXPECT_GE(*r.value, longest_induced_path_length(g));
    EXPECT_LE(*r.value, clique_count(g));
  }
}

TEST(FanRegularity, StrictlyImpureIsCliqueCount) {
  FanSpec s{4, {FanBlock{{1, 2}, {3, 4}}}};
  RegResult r = fan_regularity(s);
  EXPECT_EQ(exact(r), clique_count(make_k_fan(s)));
  EXPECT_TRUE(mentions(r, "fan-clique-bound"));
}

TEST(FanRegularity, MixedGivesBounds) {
  FanSpec s{4, {FanBlock{{1}, {2}}, FanBlock{{2, 3}, {3, 4}}}};
  RegResult r = fan_regularity(s);
  EXPECT_FALSE(r.is_exact());
  EXPECT_EQ(r.lower, 3);
  EXPECT_EQ(r.upper, clique_count(make_k_fan(s)));
}

TEST(CircPair, Values) {
  EXPECT_EQ(reg_circ_pair(3, 3), 6);
  EXPECT_EQ(reg_circ_pair(5, 2), 4);
  EXPECT_EQ(reg_circ_pair(2, 2), 4);
  EXPECT_THROW(reg_circ_pair(1, 3), InputError);
}

TEST(FmCircFan, Values) {
  EXPECT_EQ(reg_fm_circ_fan(3, pure_fan(4, {{1, 2}, {3, 4}}), 2), 6);
  EXPECT_EQ(reg_fm_circ_fan(2, pure_fan(2, {{1}}), 1), 3);
  EXPECT_EQ(reg_fm_circ_fan(4, pure_fan(3, {{1}, {2}}), 1), 5);
  EXPECT_THROW(reg_fm_circ_fan(3, pure_fan(4, {{1}, {2, 3}}), 1), InputError);
  EXPECT_THROW(reg_fm_circ_fan(1, pure_fan(2, {{1}}), 1), InputError);
  EXPECT_THROW(reg_fm_circ_fan(3, FanSpec{3, {FanBlock{{1}, {3}}}}, 1), InputError);
}

TEST(CircChain, Values) {
  EXPECT_EQ(reg_circ_chain({3, 4, 3, 3}, FTail{3}), 11);
  EXPECT_EQ(reg_circ_chain({3}, FTail{3}), 6);
  EXPECT_EQ(reg_circ_chain({3, 3}, FanTail{pure_fan(4, {{1, 2}, {3, 4}}), 2}), 7);
  EXPECT_THROW(reg_circ_chain({3, 2}, FTail{3}), InputError);
  EXPECT_THROW(reg_circ_chain({3}, FTail{2}), InputError);
  EXPECT_THROW(reg_circ_chain({3}, FanTail{pure_fan(3, {{1}, {2}}), 1}), InputError);
}

TEST(CircChain, AllThreesIdentity) {
  for (int t = 1; t <= 6; ++t) {
    std::vector<int> ms(t, 3);
    int chain = reg_circ_chain(ms, FTail{3});
    ms.push_back(3);
    EXPECT_EQ(chain, t + 5);
    EXPECT_EQ(reg_cm_bipartite(expr_circ_chain(ms)), t + 5);
  }
}

TEST(CmBipartite, Examples) {
  EXPECT_EQ(reg_cm_bipartite(expr_circ_chain({3, 4, 3, 3, 3})), 11);
  EXPECT_EQ(reg_cm_bipartite(expr_F(1)), 1);
  EXPECT_EQ(reg_cm_bipartite(expr_star(expr_F(2), expr_F(2))), 6);
  EXPECT_THROW(reg_cm_bipartite(expr_fan(pure_fan(2, {{1}}))), InputError);
}

TEST(Bounds, MatsudaMuraiAndCliques) {
  MMBounds p4 = mm_bounds(path_graph(4));
  EXPECT_EQ(p4.lower, 3);
  EXPECT_EQ(p4.upper, 3);
  MMBounds k5 = mm_bounds(complete_graph(5));
  EXPECT_EQ(k5.lower, 1);
  EXPECT_EQ(k5.upper, 4);
  EXPECT_EQ(mm_bounds(make_k_fan(pure_fan(4, {{1}, {2}}))).lower, 3);
  EXPECT_THROW(mm_bounds(Graph(3)), InputError);
  EXPECT_EQ(sk_upper(complete_graph(6)), 1);
  EXPECT_EQ(sk_upper(path_graph(6)), 5);
  EXPECT_EQ(sk_upper(make_k_fan(pure_fan(3, {{1}}))), 2);
}

TEST(Dispatcher, Provenance) {
  EXPECT_TRUE(mentions(reg_formula(expr_F(3)), "reg-F"));
  EXPECT_TRUE(mentions(reg_formula(expr_circ_chain({3, 4, 3, 3, 3})), "cm-bipartite"));
  RegResult pair = reg_formula(expr_circ(expr_F(2), expr_F(2)));
  EXPECT_EQ(exact(pair), 4);
  EXPECT_TRUE(mentions(pair, "circ-pair"));
  FanSpec fan = pure_fan(3, {{1, 2}});
  int f = first_pendant(make_k_fan(fan));
  RegResult fm_fan = reg_formula(expr_circ(expr_F(3), expr_fan(fan), std::nullopt, f));
  EXPECT_EQ(exact(fm_fan), 5);
  EXPECT_TRUE(mentions(fm_fan, "f-circ-fan"));
  RegResult chain_fan = reg_formula(expr_circ(expr_circ_chain({3, 3}), expr_fan(pure_fan(4, {{1, 2}, {3, 4}})), std::nullopt, 5));
  EXPECT_EQ(exact(chain_fan), 7);
  EXPECT_TRUE(mentions(chain_fan, "circ-chain"));
  RegResult star = reg_formula(expr_star(expr_fan(pure_fan(3, {{1}})), expr_F(2), 4, std::nullopt));
  EXPECT_EQ(exact(star), 2 + 3);
  EXPECT_TRUE(mentions(star, "star-additivity"));
}

TEST(Dispatcher, GraphsWithoutFormulaGetBounds) {
  RegResult c5 = reg_formula(cycle_graph(5));
  EXPECT_FALSE(c5.is_exact());
  EXPECT_EQ(c5.lower, 3);
  EXPECT_EQ(c5.upper, 4);
  EXPECT_TRUE(mentions(c5, "matsuda-murai"));
  RegResult f3 = reg_formula(make_F(3));
  EXPECT_EQ(exact(f3), 3);
  EXPECT_TRUE(mentions(f3, "decomposition"));
}

TEST(Consistency, FormulasAgreeWhereSeveralApply) {
  for (int m1 = 3; m1 <= 6; ++m1)
    for (int m2 = 3; m2 <= 6; ++m2)
      EXPECT_EQ(reg_cm_bipartite(expr_circ(expr_F(m1), expr_F(m2))), reg_circ_pair(m1, m2));
  for (const std::vector<int>& ms : std::vector<std::vector<int>>{{3, 4, 5}, {4, 4, 3, 6}, {5, 3, 3, 3, 4}}) {
    std::vector<int> head(ms.begin(), ms.end() - 1);
    EXPECT_EQ(reg_cm_bipartite(expr_circ_chain(ms)), reg_circ_chain(head, FTail{ms.back()}));
  }
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      EXPECT_EQ(reg_cm_bipartite(expr_star(expr_F(a), expr_F(b))), reg_F(a) + reg_F(b));
}

TEST(Consistency, ExactValuesWithinGraphBounds) {
  std::mt19937_64 rng(5);
  RandomExprOptions opt;
  opt.max_vertices = 12;
  for (int k = 0; k < 60; ++k) {
    ExprPtr e = random_normal_form(rng, opt);
    Graph g = eval_expr(e);
    int reg = exact(reg_formula(e));
    MMBounds b = mm_bounds(g);
    EXPECT_GE(reg, b.lower);
    EXPECT_LE(reg, b.upper);
    EXPECT_LE(reg, sk_upper(g));
    EXPECT_EQ(exact(reg_formula(g)), reg);
  }
}
