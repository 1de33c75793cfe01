#include <gtest/gtest.h>

#include <random>
#include <set>

#include "beireg/algebra/betti.hpp"
#include "beireg/algebra/groebner.hpp"
#include "beireg/algebra/hilbert.hpp"
#include "beireg/algebra/ideal.hpp"
#include "beireg/algebra/sparse_linalg.hpp"
#include "beireg/binomial_edge.hpp"
#include "beireg/families.hpp"
#include "beireg/isomorphism.hpp"

using namespace beireg;
using namespace beireg::algebra;

namespace {

std::set<std::string> strings_of(const BiRing& r, const std::vector<Poly>& polys) {
  std::set<std::string> out;
  for (const Poly& f : polys) out.insert(to_string(r.ring, f, r.names()));
  return out;
}

std::set<std::string> monic_minors(const BiRing& r, const std::vector<Edge>& edges) {
  std::vector<Poly> polys;
  for (const Edge& e : edges) polys.push_back(make_monic(r.ring, r.minor(e.u, e.v)));
  return strings_of(r, polys);
}

std::vector<Monomial> monomials_of_degree(int nvars, int d) {
  std::vector<Monomial> out;
  Monomial m;
  auto rec = [&](auto& self, int v, int left) -> void {
    if (v == nvars - 1) {
      Monomial x = m;
      if (left) x = x * Monomial::var(v, left);
      out.push_back(x);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      Monomial save = m;
      if (k) m = m * Monomial::var(v, k);
      self(self, v + 1, left - k);
      m = save;
    }
  };
  rec(rec, 0, d);
  return out;
}

// Dense Gaussian elimination over F_p, independent of the sparse code.
std::size_t dense_rank(const PrimeField& f, std::vector<std::vector<std::uint32_t>> a) {
  std::size_t rank = 0, cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    std::uint32_t inv = f.inv(a[rank][c]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      std::uint32_t k = f.mul(a[r][c], inv);
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = f.sub(a[r][j], f.mul(k, a[rank][j]));
    }
    ++rank;
  }
  return rank;
}

std::vector<Graph> corpus() {
  std::vector<Graph> out;
  for (int n = 2; n <= 5; ++n)
    for (Graph& g : enumerate_connected_graphs(n)) out.push_back(std::move(g));
  out.push_back(Graph(4, {{1, 2}, {3, 4}}));  // disconnected
  out.push_back(make_F(3));
  out.push_back(make_k_fan(pure_fan(3, {{1}, {2}})));
  return out;
}

BettiOptions with(BettiBackend backend, bool initial_bound, std::optional<int> slack) {
  BettiOptions o;
  o.backend = backend;
  o.initial_bound = initial_bound;
  o.degree_slack = slack;
  return o;
}

IntPoly euler_numerator(const BettiTable& t) {
  IntPoly p;
  for (const auto& [ij, b] : t.entries) {
    if (p.size() <= static_cast<std::size_t>(ij.second)) p.resize(ij.second + 1, 0);
    p[ij.second] += (ij.first % 2 ? -b : b);
  }
  trim(p);
  return p;
}

}  // namespace

TEST(Groebner, CompleteGraphOnTwo) {
  Ideal j = binomial_edge_ideal(complete_graph(2));
  GroebnerBasis gb = groebner_basis(j);
  EXPECT_EQ(strings_of(j.ring, gb.polys()), monic_minors(j.ring, {{1, 2}}));
}

TEST(Groebner, PathOnThreeIsQuadratic) {
  Ideal j = binomial_edge_ideal(path_graph(3));
  GroebnerBasis gb = groebner_basis(j);
  EXPECT_EQ(strings_of(j.ring, gb.polys()), monic_minors(j.ring, {{1, 2}, {2, 3}}));
}

TEST(Groebner, TriangleGivesAllMinors) {
  Ideal j = binomial_edge_ideal(complete_graph(3));
  GroebnerBasis gb = groebner_basis(j);
  EXPECT_EQ(strings_of(j.ring, gb.polys()), monic_minors(j.ring, {{1, 2}, {1, 3}, {2, 3}}));
}

TEST(Groebner, FourCycleNeedsCubics) {
  // Non-closed labelling: the reduced basis has elements of degree 3.
  GroebnerBasis gb = groebner_basis(binomial_edge_ideal(cycle_graph(4)));
  int cubic = 0;
  for (const Poly& g : gb.polys()) cubic += g.front().m.deg == 3;
  EXPECT_GT(cubic, 0);
}

TEST(Groebner, FixedPointAndSPolynomials) {
  for (const Graph& g : corpus()) {
    Ideal j = binomial_edge_ideal(g);
    GroebnerBasis gb = groebner_basis(j);
    EXPECT_EQ(strings_of(j.ring, groebner_basis(j.ring.ring, gb.polys()).polys()), strings_of(j.ring, gb.polys()));
    const auto& p = gb.polys();
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b) {
        Monomial l = lcm(p[a].front().m, p[b].front().m);
        EXPECT_TRUE(gb.normal_form(algebra::detail::s_polynomial(j.ring.ring, p[a], p[b], l)).empty());
      }
    for (const Poly& f : j.gens) EXPECT_TRUE(gb.contains(f));
    for (const Poly& f : p) EXPECT_EQ(f.front().c, 1u);
  }
}

TEST(Ideals, IntersectionOfCoprimePrincipalIdeals) {
  BiRing r(1, PrimeField());
  Ideal x{r, {r.variable(r.x(1))}}, y{r, {r.variable(r.y(1))}};
  Ideal xy{r, {multiply(r.ring, r.variable(r.x(1)), r.variable(r.y(1)))}};
  EXPECT_TRUE(ideal_equal(ideal_intersect(x, y), xy));
  EXPECT_TRUE(ideal_equal(ideal_intersect(x, x), x));
  EXPECT_FALSE(ideal_equal(x, y));
  EXPECT_TRUE(ideal_contains(ideal_sum(x, y), xy));
}

TEST(Ideals, SelfIntersection) {
  for (const Graph& g : {path_graph(4), cycle_graph(4), complete_graph(4)}) {
    Ideal j = binomial_edge_ideal(g);
    EXPECT_TRUE(ideal_equal(ideal_intersect(j, j), j));
  }
}

TEST(Ideals, RingMismatchRejected) {
  Ideal a = binomial_edge_ideal(path_graph(3));
  Ideal b = binomial_edge_ideal(path_graph(4));
  EXPECT_THROW(ideal_sum(a, b), InputError);
  EXPECT_THROW(ideal_intersect(a, binomial_edge_ideal(path_graph(3), 101)), InputError);
}

TEST(Hilbert, FunctionMatchesStandardMonomialCount) {
  for (const Graph& g : {path_graph(3), complete_graph(3), cycle_graph(4), make_F(2), Graph(3, {{1, 2}})}) {
    Ideal j = binomial_edge_ideal(g);
    GroebnerBasis gb = groebner_basis(j);
    int nvars = 2 * g.order();
    std::vector<long long> hf = hilbert_function(hilbert_numerator(gb), nvars, 5);
    for (int d = 0; d <= 5; ++d) {
      long long count = 0;
      for (const Monomial& m : monomials_of_degree(nvars, d)) count += gb.standard(m);
      EXPECT_EQ(hf[d], count) << "degree " << d;
    }
  }
}

TEST(Hilbert, KrullDimension) {
  // dim S/J_{K_n} = n + 1 (generic 2 x n matrix of rank <= 1).
  for (int n = 2; n <= 5; ++n)
    EXPECT_EQ(krull_dimension(hilbert_numerator(groebner_basis(binomial_edge_ideal(complete_graph(n)))), 2 * n), n + 1);
  EXPECT_EQ(krull_dimension(hilbert_numerator(groebner_basis(binomial_edge_ideal(path_graph(3)))), 6), 4);
  EXPECT_EQ(krull_dimension(IntPoly{1}, 4), 4);
}

TEST(SparseLinalg, RankMatchesDenseElimination) {
  PrimeField f(101);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    int rows = 1 + static_cast<int>(rng() % 8), cols = 1 + static_cast<int>(rng() % 8);
    std::vector<std::vector<std::uint32_t>> dense(rows, std::vector<std::uint32_t>(cols, 0));
    std::vector<SparseVec> sparse(rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (rng() % 3 == 0) {
          dense[r][c] = static_cast<std::uint32_t>(rng() % 101);
          if (dense[r][c]) sparse[r].push_back({static_cast<std::uint32_t>(c), dense[r][c]});
        }
    // Force some dependent rows.
    if (rows > 2 && rng() % 2) {
      dense[rows - 1] = dense[0];
      sparse[rows - 1] = sparse[0];
    }
    EXPECT_EQ(sparse_rank(f, sparse), dense_rank(f, dense));
    std::vector<SparseVec> kernel = kernel_basis(f, sparse);
    EXPECT_EQ(kernel.size(), rows - dense_rank(f, dense));
    for (const SparseVec& c : kernel) {
      std::vector<std::uint32_t> sum(cols, 0);
      for (const SparseEntry& e : c)
        for (int j = 0; j < cols; ++j) sum[j] = f.add(sum[j], f.mul(e.val, dense[e.col][j]));
      for (int j = 0; j < cols; ++j) EXPECT_EQ(sum[j], 0u);
    }
  }
}

TEST(Betti, Hypersurface) {
  BettiTable t = betti_table(binomial_edge_ideal(complete_graph(2)));
  EXPECT_EQ(t.entries, (std::map<std::pair<int, int>, long long>{{{0, 0}, 1}, {{1, 2}, 1}}));
}

TEST(Betti, PathOnThreeIsCompleteIntersection) {
  BettiTable t = betti_table(binomial_edge_ideal(path_graph(3)));
  EXPECT_EQ(t.entries, (std::map<std::pair<int, int>, long long>{{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}}));
}

TEST(Betti, EagonNorthcottForK4) {
  // beta_i = i * binomial(4, i + 1) in degree i + 1.
  BettiTable t = betti_table(binomial_edge_ideal(complete_graph(4)));
  EXPECT_EQ(t.entries, (std::map<std::pair<int, int>, long long>{{{0, 0}, 1}, {{1, 2}, 6}, {{2, 3}, 8}, {{3, 4}, 3}}));
  EXPECT_EQ(t.regularity(), 1);
  EXPECT_EQ(t.projective_dimension(), 3);
}

TEST(Betti, MonomialKoszul) {
  BiRing r(1, PrimeField());
  Ideal m{r, {r.variable(r.x(1)), r.variable(r.y(1))}};
  BettiTable t = betti_table(m);
  EXPECT_EQ(t.entries, (std::map<std::pair<int, int>, long long>{{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}}));
  EXPECT_TRUE(betti_table(Ideal{r, {{{Monomial{}, 1}}}}).entries.empty());
}

TEST(Betti, EulerCharacteristicIsHilbertNumerator) {
  for (const Graph& g : corpus()) {
    Ideal j = binomial_edge_ideal(g);
    BettiTable t = betti_table(j, with(BettiBackend::Koszul, true, std::nullopt));
    EXPECT_EQ(euler_numerator(t), hilbert_numerator(groebner_basis(j)));
  }
}

TEST(Betti, BackendsAgree) {
  for (const Graph& g : corpus()) {
    Ideal j = binomial_edge_ideal(g);
    BettiTable reference = betti_table(j, with(BettiBackend::Koszul, true, 2));
    EXPECT_EQ(betti_table(j, with(BettiBackend::Koszul, false, 2)).entries, reference.entries);
    EXPECT_EQ(betti_table(j, with(BettiBackend::Resolution, true, 2)).entries, reference.entries);
    EXPECT_EQ(betti_table(j, with(BettiBackend::Koszul, true, std::nullopt)).entries, reference.entries);
    EXPECT_EQ(betti_table(j, with(BettiBackend::Resolution, true, std::nullopt)).entries, reference.entries);
  }
}

TEST(Betti, AuditModeOnLargerGraphs) {
  for (const Graph& g : {cycle_graph(6), make_k_fan(pure_fan(3, {{1, 2}})), path_graph(6)}) {
    Ideal j = binomial_edge_ideal(g);
    BettiTable a = betti_table(j, with(BettiBackend::Koszul, true, 2));
    EXPECT_EQ(betti_table(j, with(BettiBackend::Resolution, true, 2)).entries, a.entries);
    EXPECT_EQ(betti_table(j, with(BettiBackend::Koszul, false, 2)).entries, a.entries);
  }
}

TEST(Betti, FineDegreesRefineTotals) {
  BettiTable t = betti_table(binomial_edge_ideal(cycle_graph(4)));
  std::map<std::pair<int, int>, long long> totals;
  for (const auto& [key, b] : t.fine) totals[{key.first, key.second.total()}] += b;
  EXPECT_EQ(totals, t.entries);
}

TEST(Betti, ThreadCountDoesNotMatter) {
  Ideal j = binomial_edge_ideal(cycle_graph(5));
  BettiOptions one, many;
  one.threads = 1;
  many.threads = 4;
  EXPECT_EQ(betti_table(j, one).entries, betti_table(j, many).entries);
}

TEST(Betti, TimeBudgetIsReported) {
  BettiOptions o;
  o.timeout_seconds = 1e-9;
  o.initial_bound = false;
  EXPECT_THROW(betti_table(binomial_edge_ideal(cycle_graph(6)), o), BudgetError);
}
