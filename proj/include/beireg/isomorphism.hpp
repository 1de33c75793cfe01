#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "beireg/error.hpp"
#include "beireg/graph.hpp"

namespace beireg {

inline constexpr int kCanonicalFormLimit = 10;

namespace detail {

// Upper-triangle bits in column-major order: (0,1),(0,2),(1,2),(0,3),... so a
// partial assignment of positions 0..k fixes a prefix of the bit string.
struct CanonicalSearch {
  const std::vector<Mask>& adj;
  int n;
  std::vector<int> at;       // at[pos] = vertex placed at pos
  std::vector<bool> used;
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<int> best_at;
  int total_bits;

  std::uint64_t column_bits(int pos) const {
    std::uint64_t c = 0;
    for (int q = 0; q < pos; ++q) c = (c << 1) | ((adj[at[q]] >> at[pos]) & 1);
    return c;
  }

  // prefix holds the bits of columns 1..pos-1, most significant first.
  void run(int pos, std::uint64_t prefix, int bits) {
    if (pos == n) {
      if (prefix < best || best_at.empty()) best = prefix, best_at = at;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      at[pos] = v;
      std::uint64_t next = (prefix << pos) | column_bits(pos);
      int nbits = bits + pos;
      if (!best_at.empty() && (next > (best >> (total_bits - nbits)))) continue;
      used[v] = true;
      run(pos + 1, next, nbits);
      used[v] = false;
    }
  }
};

}  // namespace detail

/// Canonical labeling by minimum adjacency bit string over all vertex orders.
/// Two graphs on <= kCanonicalFormLimit vertices are isomorphic iff their
/// canonical forms are equal.
inline Graph canonical_form(const Graph& g) {
  int n = g.order();
  if (n > kCanonicalFormLimit)
    throw BudgetError("brute-force canonical form limited to n <= " +
                      std::to_string(kCanonicalFormLimit));
  if (n <= 1) return g;
  detail::CanonicalSearch s{.adj = g.adjacency(),
                            .n = n,
                            .at = std::vector<int>(n),
                            .used = std::vector<bool>(n, false),
                            .best_at = {},
                            .total_bits = n * (n - 1) / 2};
  s.run(0, 0, 0);
  std::vector<int> perm(n);
  for (int pos = 0; pos < n; ++pos) perm[s.best_at[pos]] = pos + 1;
  return relabel(g, perm);
}

namespace detail {

// Colour refinement on G and H jointly so colours are comparable.
inline bool refine(const Graph& g, const Graph& h, std::vector<int>& cg, std::vector<int>& ch) {
  int n = g.order();
  while (true) {
    std::map<std::vector<int>, int> ids;
    auto signature = [&](const Graph& x, const std::vector<int>& c, int v) {
      std::vector<int> sig{c[v]};
      std::vector<int> nb;
      for (Mask m = x.adjacency()[v]; m != 0; m &= m - 1) nb.push_back(c[std::countr_zero(m)]);
      std::sort(nb.begin(), nb.end());
      sig.insert(sig.end(), nb.begin(), nb.end());
      return sig;
    };
    std::vector<std::vector<int>> sg(n), sh(n);
    for (int v = 0; v < n; ++v) {
      sg[v] = signature(g, cg, v);
      sh[v] = signature(h, ch, v);
      ids.emplace(sg[v], 0);
      ids.emplace(sh[v], 0);
    }
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    std::vector<int> ng(n), nh(n);
    for (int v = 0; v < n; ++v) ng[v] = ids[sg[v]], nh[v] = ids[sh[v]];
    std::vector<int> hg(next, 0), hh(next, 0);
    for (int v = 0; v < n; ++v) ++hg[ng[v]], ++hh[nh[v]];
    if (hg != hh) return false;
    int before = static_cast<int>(std::set<int>(cg.begin(), cg.end()).size());
    cg = std::move(ng);
    ch = std::move(nh);
    if (next == before) return true;
  }
}

inline bool iso_search(const Graph& g, const Graph& h, std::vector<int> cg, std::vector<int> ch) {
  if (!refine(g, h, cg, ch)) return false;
  int n = g.order();
  // Smallest non-singleton colour class.
  std::map<int, int> count;
  for (int c : cg) ++count[c];
  int target = -1, size = n + 1;
  for (auto [c, k] : count)
    if (k > 1 && k < size) target = c, size = k;
  if (target < 0) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        int pu = static_cast<int>(std::find(ch.begin(), ch.end(), cg[u]) - ch.begin());
        int pv = static_cast<int>(std::find(ch.begin(), ch.end(), cg[v]) - ch.begin());
        if (((g.adjacency()[u] >> v) & 1) != ((h.adjacency()[pu] >> pv) & 1)) return false;
      }
    return true;
  }
  int u = static_cast<int>(std::find(cg.begin(), cg.end(), target) - cg.begin());
  int fresh = *std::max_element(cg.begin(), cg.end()) + 1;
  for (int w = 0; w < n; ++w) {
    if (ch[w] != target) continue;
    std::vector<int> cg2 = cg, ch2 = ch;
    cg2[u] = fresh;
    ch2[w] = fresh;
    if (iso_search(g, h, cg2, ch2)) return true;
  }
  return false;
}

}  // namespace detail

/// Isomorphism test by individualization and colour refinement.
inline bool are_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  int n = g.order();
  if (n == 0) return true;
  return detail::iso_search(g, h, std::vector<int>(n, 0), std::vector<int>(n, 0));
}

inline constexpr int kEnumerationLimit = 7;

/// All connected graphs on n vertices up to isomorphism, canonically labelled,
/// sorted by edge count then edge list.
inline std::vector<Graph> enumerate_connected_graphs(int n) {
  if (n < 1) throw InputError("graph enumeration needs n >= 1");
  if (n > kEnumerationLimit)
    throw BudgetError("graph enumeration limited to n <= " + std::to_string(kEnumerationLimit));
  std::vector<Graph> level{Graph(1)};
  for (int k = 2; k <= n; ++k) {
    // Every connected graph has a vertex whose removal keeps it connected,
    // so extending each connected graph on k-1 vertices reaches all of them.
    std::set<std::vector<Edge>> seen;
    std::vector<Graph> next;
    for (const Graph& base : level) {
      for (Mask nb = 1; nb <= low_mask(k - 1); ++nb) {
        std::vector<Edge> e = base.edges();
        for (Mask m = nb; m != 0; m &= m - 1) e.push_back({std::countr_zero(m) + 1, k});
        Graph c = canonical_form(Graph(k, e));
        if (seen.insert(c.edges()).second) next.push_back(std::move(c));
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [](const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.edges() < b.edges();
  });
  return level;
}

}  // namespace beireg
