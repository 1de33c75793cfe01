#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "beireg/algebra/groebner.hpp"
#include "beireg/algebra/polynomial.hpp"

namespace beireg::algebra {

/// Integer polynomial in t, coefficient k at index k.
using IntPoly = std::vector<long long>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly poly_add(IntPoly a, const IntPoly& b, long long sign = 1) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] += sign * b[k];
  trim(a);
  return a;
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

namespace detail {

inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.deg < b.deg; });
  std::vector<Monomial> out;
  for (const Monomial& g : gens) {
    bool redundant = false;
    for (const Monomial& h : out)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  return out;
}

inline IntPoly numerator(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  // Find a variable shared by two generators; if none, the generators form a
  // regular sequence of monomials.
  std::uint32_t seen = 0, shared = 0;
  for (const Monomial& g : gens) {
    shared |= seen & g.support;
    seen |= g.support;
  }
  if (shared == 0) {
    IntPoly out{1};
    for (const Monomial& g : gens) {
      IntPoly f(g.deg + 1, 0);
      f[0] = 1;
      f[g.deg] -= 1;
      out = poly_mul(out, f);
    }
    return out;
  }
  int v = std::countr_zero(shared);
  Monomial x = Monomial::var(v);
  // HN(M) = HN(M + (x)) + t * HN(M : x)
  std::vector<Monomial> plus{x}, colon;
  for (const Monomial& g : gens) {
    if (!g.support || !(g.support & x.support)) plus.push_back(g);
    colon.push_back(g.e[v] ? quotient(g, x) : g);
  }
  IntPoly a = numerator(std::move(plus));
  IntPoly b = numerator(std::move(colon));
  b.insert(b.begin(), 0);
  return poly_add(a, b);
}

}  // namespace detail

/// Numerator K(t) of the Hilbert series K(t) / (1-t)^N of S / (monomials).
inline IntPoly hilbert_numerator(const std::vector<Monomial>& monomials) {
  if (monomials.empty()) return {1};
  return detail::numerator(monomials);
}

/// Hilbert series numerator of S/I read from a Groebner basis of I.
inline IntPoly hilbert_numerator(const GroebnerBasis& gb) { return hilbert_numerator(gb.leading_monomials()); }

/// Krull dimension of S/I from the order of the pole at t = 1.
inline int krull_dimension(const IntPoly& numerator, int nvars) {
  if (numerator.empty()) return -1;  // the zero module
  IntPoly p = numerator;
  int order = 0;
  // Divide by (1 - t) while p(1) = 0.
  while (p.size() > 1) {
    long long at_one = 0;
    for (long long c : p) at_one += c;
    if (at_one != 0) break;
    // p = (1 - t) q gives q_k = p_0 + ... + p_k.
    IntPoly q(p.size() - 1, 0);
    long long sum = 0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) q[k] = sum += p[k];
    p = std::move(q);
    trim(p);
    ++order;
  }
  return nvars - order;
}

/// dim_K (S/I)_d for d = 0..max_degree, from the numerator.
inline std::vector<long long> hilbert_function(const IntPoly& numerator, int nvars, int max_degree) {
  // Coefficients of 1/(1-t)^N are binomial(d + N - 1, N - 1).
  std::vector<long long> series(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int d = 0; d <= max_degree; ++d) {
    long long b = 1;
    for (int k = 1; k < nvars; ++k) b = b * (d + k) / k;
    series[d] = nvars == 0 ? (d == 0) : b;
  }
  std::vector<long long> out(series.size(), 0);
  for (std::size_t k = 0; k < numerator.size(); ++k)
    for (std::size_t d = k; d < out.size(); ++d) out[d] += numerator[k] * series[d - k];
  return out;
}

}  // namespace beireg::algebra
