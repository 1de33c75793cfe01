#pragma once

#include <string>
#include <vector>

#include "beireg/algebra/groebner.hpp"
#include "beireg/algebra/polynomial.hpp"
#include "beireg/error.hpp"

namespace beireg::algebra {

/// S = K[x_1..x_n, y_1..y_n] with x_i at index i-1 and y_i at index n+i-1,
/// ordered x_1 > ... > x_n > y_1 > ... > y_n.
struct BiRing {
  int vertices = 0;
  PolyRing ring;

  BiRing() = default;
  BiRing(int n, PrimeField f, MonomialOrder o = MonomialOrder::DegRevLex)
      : vertices(n), ring(2 * n, f, o) {}

  int x(int i) const { return i - 1; }
  int y(int i) const { return vertices + i - 1; }
  int vertex_of(int var) const { return var % vertices; }
  bool is_y(int var) const { return var >= vertices; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (int i = 1; i <= vertices; ++i) out.push_back("x" + std::to_string(i));
    for (int i = 1; i <= vertices; ++i) out.push_back("y" + std::to_string(i));
    return out;
  }

  Poly variable(int var) const { return {{Monomial::var(var), 1}}; }

  // x_i y_j - x_j y_i
  Poly minor(int i, int j) const {
    Poly f{{Monomial::var(x(i)) * Monomial::var(y(j)), 1},
           {Monomial::var(x(j)) * Monomial::var(y(i)), ring.field.neg(1)}};
    sort_terms(ring, f);
    return f;
  }

  bool operator==(const BiRing& o) const = default;
};

struct Ideal {
  BiRing ring;
  std::vector<Poly> gens;
};

inline GroebnerBasis groebner_basis(const Ideal& i) { return groebner_basis(i.ring.ring, i.gens); }

inline void check_same_ring(const Ideal& a, const Ideal& b) {
  if (!(a.ring == b.ring)) throw InputError("ideals live in different rings");
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  Ideal out = a;
  out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
  return out;
}

/// I ∩ J via the elimination of t from tI + (1-t)J in one extra variable.
inline Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  const PolyRing& base = a.ring.ring;
  int t = base.nvars;
  PolyRing ext(base.nvars + 1, base.field, base.order, t);
  Monomial tm = Monomial::var(t);
  std::vector<Poly> gens;
  for (const Poly& f : a.gens) gens.push_back(reorder(ext, scale(ext, f, 1, tm)));
  for (const Poly& g : b.gens) {
    Poly gg = reorder(ext, g);
    gens.push_back(sub_mul(ext, gg, 1, tm, gg));
  }
  GroebnerBasis gb = groebner_basis(ext, gens);
  Ideal out{a.ring, {}};
  for (const Poly& g : gb.polys())
    if (g.front().m.e[t] == 0) out.gens.push_back(reorder(base, g));
  return out;
}

inline bool ideal_contains(const Ideal& big, const Ideal& small) {
  check_same_ring(big, small);
  GroebnerBasis gb = groebner_basis(big);
  for (const Poly& f : small.gens)
    if (!gb.contains(f)) return false;
  return true;
}

/// Equality by mutual normal-form membership of generators.
inline bool ideal_equal(const Ideal& a, const Ideal& b) {
  return ideal_contains(a, b) && ideal_contains(b, a);
}

inline std::vector<std::string> generator_strings(const Ideal& i) {
  std::vector<std::string> out;
  auto names = i.ring.names();
  for (const Poly& f : i.gens) out.push_back(to_string(i.ring.ring, f, names));
  return out;
}

}  // namespace beireg::algebra
