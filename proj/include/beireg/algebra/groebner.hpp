#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "beireg/algebra/polynomial.hpp"

namespace beireg::algebra {

namespace detail {

inline const Poly* find_reducer(const std::vector<const Poly*>& basis, const Monomial& m) {
  for (const Poly* g : basis)
    if (g->front().m.divides(m)) return g;
  return nullptr;
}

}  // namespace detail

/// Fully reduced remainder of f modulo monic polynomials `basis`.
inline Poly normal_form(const PolyRing& r, Poly f, const std::vector<const Poly*>& basis) {
  Poly rem;
  std::size_t start = 0;
  while (start < f.size()) {
    const Term lt = f[start];
    if (const Poly* g = detail::find_reducer(basis, lt.m)) {
      f = sub_mul(r, f, lt.c, quotient(lt.m, g->front().m), *g, start);
      start = 0;
    } else {
      rem.push_back(lt);
      ++start;
    }
  }
  return rem;
}

/// Reduced Groebner basis: monic, minimal, tail-reduced, sorted by ascending
/// leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(PolyRing ring, std::vector<Poly> polys) : ring_(ring), polys_(std::move(polys)) {
    for (const Poly& g : polys_) view_.push_back(&g);
  }
  GroebnerBasis(const GroebnerBasis& o) : GroebnerBasis(o.ring_, o.polys_) {}
  GroebnerBasis& operator=(const GroebnerBasis& o) {
    if (this != &o) *this = GroebnerBasis(o.ring_, o.polys_);
    return *this;
  }
  GroebnerBasis(GroebnerBasis&&) = default;
  GroebnerBasis& operator=(GroebnerBasis&&) = default;

  const PolyRing& ring() const { return ring_; }
  const std::vector<Poly>& polys() const { return polys_; }
  std::size_t size() const { return polys_.size(); }

  Poly normal_form(Poly f) const { return algebra::normal_form(ring_, std::move(f), view_); }
  bool contains(const Poly& f) const { return normal_form(f).empty(); }
  bool is_unit_ideal() const { return polys_.size() == 1 && polys_[0].front().m.deg == 0; }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const Poly& g : polys_) out.push_back(g.front().m);
    return out;
  }

  bool standard(const Monomial& m) const { return detail::find_reducer(view_, m) == nullptr; }

 private:
  PolyRing ring_;
  std::vector<Poly> polys_;
  std::vector<const Poly*> view_;
};

namespace detail {

struct CriticalPair {
  std::size_t i, j;  // i < j
  Monomial lcm;
};

inline Poly s_polynomial(const PolyRing& r, const Poly& f, const Poly& g, const Monomial& l) {
  Poly a = scale(r, f, 1, quotient(l, f.front().m));
  return sub_mul(r, a, 1, quotient(l, g.front().m), g);
}

class Buchberger {
 public:
  explicit Buchberger(const PolyRing& r) : r_(r) {}

  void add(Poly h) {
    h = make_monic(r_, std::move(h));
    std::size_t hi = store_.size();
    const Monomial hm = h.front().m;
    store_.push_back(std::move(h));
    active_.push_back(true);

    // Gebauer-Moeller update: a new pair survives unless another new pair's
    // lcm divides its lcm (product-criterion pairs count as killers too).
    std::vector<CriticalPair> candidates;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) candidates.push_back({g, hi, lcm(store_[g].front().m, hm)});
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const CriticalPair& p = candidates[a];
      bool keep = hm.coprime(store_[p.i].front().m);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
          if (candidates[b].lcm.divides(p.lcm)) keep = false;
        for (const CriticalPair& q : kept)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }
    std::vector<CriticalPair> survivors;
    for (const CriticalPair& p : kept)
      if (!hm.coprime(store_[p.i].front().m)) survivors.push_back(p);
    // Old pairs made redundant by h.
    std::vector<CriticalPair> old;
    for (const CriticalPair& p : pairs_) {
      bool redundant = hm.divides(p.lcm) && !(lcm(store_[p.i].front().m, hm) == p.lcm) &&
                       !(lcm(store_[p.j].front().m, hm) == p.lcm);
      if (!redundant) old.push_back(p);
    }
    pairs_ = std::move(old);
    pairs_.insert(pairs_.end(), survivors.begin(), survivors.end());
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && hm.divides(store_[g].front().m)) active_[g] = false;
  }

  void run() {
    while (!pairs_.empty()) {
      // Normal selection strategy: smallest lcm, ties by indices.
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        int c = r_.compare(pairs_[k].lcm, pairs_[best].lcm);
        if (c < 0 || (c == 0 && std::tie(pairs_[k].j, pairs_[k].i) < std::tie(pairs_[best].j, pairs_[best].i)))
          best = k;
      }
      CriticalPair p = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      Poly s = s_polynomial(r_, store_[p.i], store_[p.j], p.lcm);
      Poly h = normal_form(r_, std::move(s), current());
      if (!h.empty()) add(std::move(h));
    }
  }

  std::vector<Poly> reduced() const {
    std::vector<const Poly*> minimal;
    for (std::size_t g = 0; g < store_.size(); ++g)
      if (active_[g]) minimal.push_back(&store_[g]);
    // Active polys have pairwise non-dividing leading monomials except for
    // equal ones; drop later duplicates.
    std::vector<const Poly*> basis;
    for (const Poly* g : minimal) {
      bool dup = false;
      for (const Poly* b : basis)
        if (b->front().m.divides(g->front().m)) dup = true;
      if (!dup) basis.push_back(g);
    }
    std::vector<Poly> out;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::vector<const Poly*> others;
      for (std::size_t o = 0; o < basis.size(); ++o)
        if (o != k) others.push_back(basis[o]);
      Poly tail(basis[k]->begin() + 1, basis[k]->end());
      Poly t = normal_form(r_, std::move(tail), others);
      Poly g{basis[k]->front()};
      g.insert(g.end(), t.begin(), t.end());
      out.push_back(make_monic(r_, std::move(g)));
    }
    std::sort(out.begin(), out.end(),
              [&](const Poly& a, const Poly& b) { return r_.compare(a.front().m, b.front().m) < 0; });
    return out;
  }

 private:
  std::vector<const Poly*> current() const {
    std::vector<const Poly*> v;
    for (std::size_t g = 0; g < store_.size(); ++g)
      if (active_[g]) v.push_back(&store_[g]);
    return v;
  }

  PolyRing r_;
  std::vector<Poly> store_;
  std::vector<bool> active_;
  std::vector<CriticalPair> pairs_;
};

}  // namespace detail

/// Buchberger's algorithm with the Gebauer-Moeller criteria and the normal
/// selection strategy. Deterministic for a given generator order.
inline GroebnerBasis groebner_basis(const PolyRing& r, const std::vector<Poly>& generators) {
  detail::Buchberger b(r);
  std::vector<Poly> input;
  for (Poly f : generators) {
    sort_terms(r, f);
    if (!f.empty()) input.push_back(std::move(f));
  }
  // Inter-reduce the input first so the store starts small.
  for (Poly& f : input) {
    std::vector<Poly> cur = b.reduced();
    std::vector<const Poly*> view;
    for (const Poly& g : cur) view.push_back(&g);
    Poly h = normal_form(r, std::move(f), view);
    if (!h.empty()) b.add(std::move(h));
  }
  b.run();
  return GroebnerBasis(r, b.reduced());
}

}  // namespace beireg::algebra
