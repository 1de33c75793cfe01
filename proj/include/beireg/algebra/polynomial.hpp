#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "beireg/error.hpp"

namespace beireg::algebra {

// ---------------------------------------------------------------------------
// Prime field

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a ? p_ - a : 0; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const {
    // Extended Euclid on (a, p).
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr) {
      std::int64_t q = r / nr;
      t = std::exchange(nt, t - q * nt);
      r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw InputError("zero has no inverse");
    return static_cast<std::uint32_t>(t < 0 ? t + p_ : t);
  }
  std::uint32_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  // Symmetric lift into (-p/2, p/2], for printing.
  long long lift(std::uint32_t a) const { return a > p_ / 2 ? static_cast<long long>(a) - p_ : a; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Monomials

inline constexpr int kMaxVars = 32;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint32_t support = 0;  // bit v set iff e[v] > 0
  std::uint16_t deg = 0;

  static Monomial var(int v, int power = 1) {
    Monomial m;
    m.e[v] = static_cast<std::uint8_t>(power);
    m.support = power ? (1u << v) : 0;
    m.deg = static_cast<std::uint16_t>(power);
    return m;
  }

  bool divides(const Monomial& o) const {
    if (support & ~o.support) return false;
    for (std::uint32_t s = support; s; s &= s - 1) {
      int v = std::countr_zero(s);
      if (e[v] > o.e[v]) return false;
    }
    return true;
  }

  bool coprime(const Monomial& o) const { return (support & o.support) == 0; }

  bool operator==(const Monomial& o) const { return support == o.support && e == o.e; }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.support = a.support | b.support;
  for (std::uint32_t s = m.support; s; s &= s - 1) {
    int v = std::countr_zero(s);
    unsigned x = unsigned{a.e[v]} + b.e[v];
    if (x > 255) throw BudgetError("monomial exponent overflow");
    m.e[v] = static_cast<std::uint8_t>(x);
  }
  m.deg = static_cast<std::uint16_t>(a.deg + b.deg);
  return m;
}

// a / b, assuming b | a.
inline Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::uint32_t s = a.support; s; s &= s - 1) {
    int v = std::countr_zero(s);
    m.e[v] = static_cast<std::uint8_t>(a.e[v] - b.e[v]);
    if (m.e[v]) m.support |= 1u << v;
  }
  m.deg = static_cast<std::uint16_t>(a.deg - b.deg);
  return m;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.support = a.support | b.support;
  for (std::uint32_t s = m.support; s; s &= s - 1) {
    int v = std::countr_zero(s);
    m.e[v] = std::max(a.e[v], b.e[v]);
    m.deg = static_cast<std::uint16_t>(m.deg + m.e[v]);
  }
  return m;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull ^ m.support;
    for (std::uint32_t s = m.support; s; s &= s - 1) {
      int v = std::countr_zero(s);
      h = (h ^ (static_cast<std::uint64_t>(v) << 8 | m.e[v])) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// ---------------------------------------------------------------------------
// Rings

enum class MonomialOrder { DegRevLex, Lex };

/// K[v_0, ..., v_{N-1}] with v_0 > v_1 > ... in the chosen order. If
/// `eliminate` >= 0 that variable is compared first (an elimination order for it).
struct PolyRing {
  int nvars = 0;
  PrimeField field{};
  MonomialOrder order = MonomialOrder::DegRevLex;
  int eliminate = -1;

  PolyRing() = default;
  PolyRing(int n, PrimeField f, MonomialOrder o = MonomialOrder::DegRevLex, int elim = -1)
      : nvars(n), field(f), order(o), eliminate(elim) {
    if (n < 0 || n > kMaxVars) throw BudgetError("rings are limited to " + std::to_string(kMaxVars) + " variables");
  }

  // -1, 0, +1 as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const {
    if (eliminate >= 0 && a.e[eliminate] != b.e[eliminate])
      return a.e[eliminate] > b.e[eliminate] ? 1 : -1;
    if (order == MonomialOrder::Lex) {
      for (int v = 0; v < nvars; ++v)
        if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? 1 : -1;
      return 0;
    }
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    for (int v = nvars - 1; v >= 0; --v)
      if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? 1 : -1;
    return 0;
  }

  bool same_space(const PolyRing& o) const {
    return nvars == o.nvars && field == o.field;
  }
  bool operator==(const PolyRing& o) const = default;
};

// ---------------------------------------------------------------------------
// Polynomials: terms sorted strictly descending in the ring order, no zero
// coefficients. The zero polynomial is the empty vector.

struct Term {
  Monomial m;
  std::uint32_t c = 0;
};

using Poly = std::vector<Term>;

inline void sort_terms(const PolyRing& r, Poly& f) {
  std::sort(f.begin(), f.end(), [&](const Term& a, const Term& b) { return r.compare(a.m, b.m) > 0; });
  // Combine equal monomials.
  Poly out;
  for (const Term& t : f) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c = r.field.add(out.back().c, t.c);
    else
      out.push_back(t);
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  f = std::move(out);
}

inline Poly make_monic(const PolyRing& r, Poly f) {
  if (f.empty() || f.front().c == 1) return f;
  std::uint32_t inv = r.field.inv(f.front().c);
  for (Term& t : f) t.c = r.field.mul(t.c, inv);
  return f;
}

/// f - c * m * g, for f and g sorted.
inline Poly sub_mul(const PolyRing& r, const Poly& f, std::uint32_t c, const Monomial& m,
                    const Poly& g, std::size_t f_from = 0) {
  if (c == 0) return Poly(f.begin() + static_cast<std::ptrdiff_t>(f_from), f.end());
  Poly out;
  out.reserve(f.size() - f_from + g.size());
  std::size_t i = f_from, j = 0;
  Monomial gm;
  bool have = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have) {
      gm = m * g[j].m;
      have = true;
    }
    int cmp = i == f.size() ? -1 : (j == g.size() ? 1 : r.compare(f[i].m, gm));
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else {
      std::uint32_t gc = r.field.mul(c, g[j].c);
      if (cmp == 0) {
        std::uint32_t v = r.field.sub(f[i].c, gc);
        if (v) out.push_back({gm, v});
        ++i;
      } else {
        out.push_back({gm, r.field.neg(gc)});
      }
      ++j;
      have = false;
    }
  }
  return out;
}

inline Poly add(const PolyRing& r, const Poly& f, const Poly& g) {
  return sub_mul(r, f, r.field.neg(1), Monomial{}, g);
}

inline Poly scale(const PolyRing& r, Poly f, std::uint32_t c, const Monomial& m = Monomial{}) {
  if (c == 0) return {};
  for (Term& t : f) t.c = r.field.mul(t.c, c), t.m = t.m * m;
  return f;
}

inline Poly multiply(const PolyRing& r, const Poly& f, const Poly& g) {
  Poly out;
  for (const Term& t : g) out = sub_mul(r, out, r.field.neg(t.c), t.m, f);
  return out;
}

// Re-sorts the terms for another ring (same variables, different order).
inline Poly reorder(const PolyRing& to, Poly f) {
  sort_terms(to, f);
  return f;
}

/// Human-readable rendering with variable names.
inline std::string to_string(const PolyRing& r, const Poly& f, const std::vector<std::string>& names) {
  if (f.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < f.size(); ++k) {
    long long c = r.field.lift(f[k].c);
    if (k) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    long long a = c < 0 ? -c : c;
    bool constant = f[k].m.deg == 0;
    if (a != 1 || constant) s += std::to_string(a) + (constant ? "" : "*");
    bool first = true;
    for (int v = 0; v < r.nvars; ++v) {
      if (!f[k].m.e[v]) continue;
      if (!first) s += "*";
      first = false;
      s += v < static_cast<int>(names.size()) ? names[v] : "v" + std::to_string(v);
      if (f[k].m.e[v] > 1) s += "^" + std::to_string(f[k].m.e[v]);
    }
  }
  return s;
}

}  // namespace beireg::algebra
