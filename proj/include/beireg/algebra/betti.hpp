#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "beireg/algebra/groebner.hpp"
#include "beireg/algebra/ideal.hpp"
#include "beireg/algebra/polynomial.hpp"
#include "beireg/algebra/sparse_linalg.hpp"
#include "beireg/error.hpp"

namespace beireg::algebra {

// ---------------------------------------------------------------------------
// Fine grading. Both x_k and y_k have vertex degree e_k; the second component
// counts x's. Every binomial edge ideal, the P_T primes, and the ideals built
// from them by sums and intersections are homogeneous for it.

inline constexpr int kMaxVertices = kMaxVars / 2;

struct FineDegree {
  std::array<std::uint8_t, kMaxVertices> a{};
  std::uint8_t x = 0;

  int total() const {
    int t = 0;
    for (std::uint8_t v : a) t += v;
    return t;
  }
  auto operator<=>(const FineDegree&) const = default;
};

inline FineDegree fine_degree(const BiRing& r, const Monomial& m) {
  FineDegree d;
  for (std::uint32_t s = m.support; s; s &= s - 1) {
    int v = std::countr_zero(s);
    d.a[r.vertex_of(v)] = static_cast<std::uint8_t>(d.a[r.vertex_of(v)] + m.e[v]);
    if (!r.is_y(v)) d.x = static_cast<std::uint8_t>(d.x + m.e[v]);
  }
  return d;
}

// ---------------------------------------------------------------------------

/// Minimal graded Betti numbers of S/I: (i, j) -> beta_{i,j}, zeros omitted.
struct BettiTable {
  std::map<std::pair<int, int>, long long> entries;
  // The same numbers refined by fine degree.
  std::map<std::pair<int, FineDegree>, long long> fine;

  long long at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }

  // max{j - i}; empty for the zero module.
  std::optional<int> regularity() const {
    std::optional<int> r;
    for (const auto& [ij, b] : entries)
      if (!r || ij.second - ij.first > *r) r = ij.second - ij.first;
    return r;
  }

  int projective_dimension() const {
    int p = -1;
    for (const auto& [ij, b] : entries) p = std::max(p, ij.first);
    return p;
  }

  void add(int i, const FineDegree& d, long long b) {
    if (b == 0) return;
    entries[{i, d.total()}] += b;
    fine[{i, d}] += b;
  }
};

enum class BettiBackend { Koszul, Resolution };

struct BettiOptions {
  BettiBackend backend = BettiBackend::Koszul;
  // Entries with j > i + (n - 1) + slack are not computed; nullopt = no cap.
  std::optional<int> degree_slack = 2;
  // Skip the Koszul computation in degrees where the Betti numbers of the
  // initial ideal leave no room for cancellation.
  bool initial_bound = true;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::optional<double> timeout_seconds;
};

class Deadline {
 public:
  explicit Deadline(std::optional<double> seconds) {
    if (seconds)
      end_ = std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*seconds));
  }
  void check() const {
    if (end_ && std::chrono::steady_clock::now() > *end_) throw BudgetError("time budget exceeded");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

namespace detail {

inline bool standard_for(const std::vector<Monomial>& lms, const Monomial& m) {
  for (const Monomial& g : lms)
    if (g.divides(m)) return false;
  return true;
}

/// All lcms of nonempty subsets of `gens`.
inline std::vector<Monomial> lcm_closure(const std::vector<Monomial>& gens, const Deadline& deadline) {
  std::unordered_set<Monomial, MonomialHash> seen(gens.begin(), gens.end());
  std::vector<Monomial> all(seen.begin(), seen.end());
  std::vector<Monomial> frontier = all;
  while (!frontier.empty()) {
    deadline.check();
    std::vector<Monomial> next;
    for (const Monomial& f : frontier)
      for (const Monomial& g : gens) {
        Monomial l = lcm(f, g);
        if (seen.insert(l).second) next.push_back(l);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

/// beta_{i,b}(S/M) for a monomial ideal M (given by generators) at the
/// multidegree b, as homology of the Koszul complex of S/M in degree b.
inline std::vector<long long> monomial_betti_at(const PrimeField& field, const std::vector<Monomial>& lms,
                                                const Monomial& b) {
  std::vector<int> vars;
  for (std::uint32_t s = b.support; s; s &= s - 1) vars.push_back(std::countr_zero(s));
  const int s = static_cast<int>(vars.size());
  const std::uint32_t cells = 1u << s;
  // index[tau] = position of the cell in its homological degree, or -1.
  std::vector<int> index(cells, -1);
  std::vector<int> count(static_cast<std::size_t>(s) + 2, 0);
  for (std::uint32_t tau = 0; tau < cells; ++tau) {
    Monomial m = b;
    for (int p = 0; p < s; ++p)
      if (tau >> p & 1) m = quotient(m, Monomial::var(vars[p]));
    if (standard_for(lms, m)) index[tau] = count[std::popcount(tau)]++;
  }
  std::vector<std::size_t> rank(static_cast<std::size_t>(s) + 2, 0);
  for (int i = 1; i <= s; ++i) {
    std::vector<SparseVec> rows;
    for (std::uint32_t tau = 0; tau < cells; ++tau) {
      if (index[tau] < 0 || std::popcount(tau) != i) continue;
      SparseVec row;
      int pos = 0;
      for (int p = 0; p < s; ++p) {
        if (!(tau >> p & 1)) continue;
        int target = index[tau & ~(1u << p)];
        if (target >= 0) row.push_back({static_cast<std::uint32_t>(target), pos % 2 ? field.neg(1) : 1});
        ++pos;
      }
      normalize(field, row);
      rows.push_back(std::move(row));
    }
    rank[i] = sparse_rank(field, std::move(rows));
  }
  std::vector<long long> out(static_cast<std::size_t>(s) + 1, 0);
  for (int i = 0; i <= s; ++i)
    out[i] = count[i] - static_cast<long long>(rank[i]) - static_cast<long long>(rank[i + 1]);
  return out;
}

/// Monomials of a given fine degree, restricted by `accept`.
template <class Accept>
void fine_monomials(const BiRing& r, const FineDegree& d, Accept&& accept) {
  const int n = r.vertices;
  std::vector<int> suffix(static_cast<std::size_t>(n) + 1, 0);
  for (int k = n - 1; k >= 0; --k) suffix[k] = suffix[k + 1] + d.a[k];
  Monomial m;
  auto rec = [&](auto&& self, int k, int xs) -> void {
    if (k == n) {
      if (xs == 0) accept(m);
      return;
    }
    int ak = d.a[k];
    int lo = std::max(0, xs - suffix[k + 1]);
    int hi = std::min(ak, xs);
    for (int ex = lo; ex <= hi; ++ex) {
      Monomial saved = m;
      if (ex) m = m * Monomial::var(r.x(k + 1), ex);
      if (ak - ex) m = m * Monomial::var(r.y(k + 1), ak - ex);
      self(self, k + 1, xs - ex);
      m = saved;
    }
  };
  if (d.x <= suffix[0]) rec(rec, 0, d.x);
}

inline FineDegree minus(const FineDegree& d, const FineDegree& e) {
  FineDegree out;
  for (int k = 0; k < kMaxVertices; ++k) {
    if (e.a[k] > d.a[k]) throw InputError("fine degree difference is negative");
    out.a[k] = static_cast<std::uint8_t>(d.a[k] - e.a[k]);
  }
  if (e.x > d.x) throw InputError("fine degree difference is negative");
  out.x = static_cast<std::uint8_t>(d.x - e.x);
  return out;
}

inline bool fine_leq(const FineDegree& e, const FineDegree& d) {
  for (int k = 0; k < kMaxVertices; ++k)
    if (e.a[k] > d.a[k]) return false;
  if (e.x > d.x) return false;
  // The y-count must fit as well.
  return e.total() - e.x <= d.total() - d.x;
}

struct CellKey {
  std::uint32_t sigma;
  Monomial m;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const { return MonomialHash{}(k.m) * 1000003u ^ k.sigma; }
};

using NormalFormCache = std::unordered_map<Monomial, Poly, MonomialHash>;

/// Koszul complex of S/I in one fine degree: pairs (sigma, m) with sigma a set
/// of variables and m a standard monomial, deg sigma + deg m = D.
class KoszulStrand {
 public:
  KoszulStrand(const BiRing& r, const GroebnerBasis& gb, NormalFormCache& cache, const Deadline& deadline)
      : r_(r), gb_(gb), cache_(cache), deadline_(deadline) {}

  /// beta_{i,D}(S/I) for i in [lo, hi].
  std::map<int, long long> betti(const FineDegree& d, int lo, int hi) {
    build_cells(d, std::max(0, lo - 1), hi + 1);
    std::map<int, std::size_t> rank;
    for (int i = std::max(1, lo); i <= hi + 1; ++i) rank[i] = differential_rank(i);
    std::map<int, long long> out;
    for (int i = lo; i <= hi; ++i) {
      long long dim = static_cast<long long>(cells_[i].size());
      long long b = dim - static_cast<long long>(rank[i]) - static_cast<long long>(rank[i + 1]);
      if (b) out[i] = b;
    }
    return out;
  }

 private:
  void build_cells(const FineDegree& d, int lo, int hi) {
    cells_.clear();
    index_.clear();
    const int n = r_.vertices;
    std::vector<int> vars;
    for (int k = 0; k < n; ++k)
      if (d.a[k]) vars.push_back(r_.x(k + 1)), vars.push_back(r_.y(k + 1));
    const int nv = static_cast<int>(vars.size());
    // Walk over variable subsets sigma that fit under D.
    FineDegree used;
    std::uint32_t sigma = 0;
    int size = 0;
    auto rec = [&](auto&& self, int p) -> void {
      if (p == nv) {
        if (size < lo || size > hi) return;
        deadline_.check();
        FineDegree rest = minus(d, used);
        fine_monomials(r_, rest, [&](const Monomial& m) {
          if (!gb_.standard(m)) return;
          auto& list = cells_[size];
          index_[size].emplace(CellKey{sigma, m}, static_cast<std::uint32_t>(list.size()));
          list.push_back({sigma, m});
        });
        return;
      }
      self(self, p + 1);
      if (size == hi) return;
      int v = vars[p];
      int k = r_.vertex_of(v);
      bool is_x = !r_.is_y(v);
      if (used.a[k] >= d.a[k] || (is_x && used.x >= d.x)) return;
      if (!is_x && (used.total() - used.x) >= d.total() - d.x) return;
      ++used.a[k];
      if (is_x) ++used.x;
      sigma |= 1u << v;
      ++size;
      self(self, p + 1);
      --size;
      sigma &= ~(1u << v);
      if (is_x) --used.x;
      --used.a[k];
    };
    rec(rec, 0);
  }

  const Poly& normal_form_of(const Monomial& m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    Poly p = gb_.standard(m) ? Poly{{m, 1}} : gb_.normal_form(Poly{{m, 1}});
    return cache_.emplace(m, std::move(p)).first->second;
  }

  // Rank of d_i : K_i -> K_{i-1}.
  std::size_t differential_rank(int i) {
    auto src = cells_.find(i);
    if (src == cells_.end() || src->second.empty()) return 0;
    const auto& target = index_[i - 1];
    const PrimeField& f = r_.ring.field;
    std::vector<SparseVec> rows;
    rows.reserve(src->second.size());
    for (const CellKey& c : src->second) {
      SparseVec row;
      int pos = 0;
      for (std::uint32_t s = c.sigma; s; s &= s - 1, ++pos) {
        int v = std::countr_zero(s);
        std::uint32_t face = c.sigma & ~(1u << v);
        for (const Term& t : normal_form_of(c.m * Monomial::var(v))) {
          auto hit = target.find(CellKey{face, t.m});
          if (hit == target.end()) throw std::logic_error("Koszul differential left the strand");
          row.push_back({hit->second, pos % 2 ? f.neg(t.c) : t.c});
        }
      }
      normalize(f, row);
      rows.push_back(std::move(row));
    }
    std::size_t ticks = 0;
    return sparse_rank(f, std::move(rows), [&] {
      if (++ticks % 256 == 0) deadline_.check();
    });
  }

  const BiRing& r_;
  const GroebnerBasis& gb_;
  NormalFormCache& cache_;
  const Deadline& deadline_;
  std::map<int, std::vector<CellKey>> cells_;
  std::map<int, std::unordered_map<CellKey, std::uint32_t, CellKeyHash>> index_;
};

/// Runs body(task, worker) for every task on a small pool of threads.
template <class Body>
void parallel_for(std::size_t tasks, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_lock;
  auto worker = [&](unsigned w) {
    while (!failed) {
      std::size_t t = next++;
      if (t >= tasks) return;
      try {
        body(t, w);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

inline int resolve_threads(unsigned requested) {
  return static_cast<int>(requested ? requested : std::max(1u, std::thread::hardware_concurrency()));
}

// Betti numbers of S/in(I) by fine degree, from the lcm lattice of in(I).
inline std::map<FineDegree, std::map<int, long long>> initial_betti(const BiRing& r,
                                                                    const std::vector<Monomial>& lms,
                                                                    const Deadline& deadline) {
  std::map<FineDegree, std::map<int, long long>> out;
  out[FineDegree{}][0] = 1;
  for (const Monomial& b : lcm_closure(lms, deadline)) {
    deadline.check();
    std::vector<long long> v = monomial_betti_at(r.ring.field, lms, b);
    FineDegree d = fine_degree(r, b);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) out[d][static_cast<int>(i)] += v[i];
  }
  return out;
}

inline bool within_cap(const BiRing& r, const BettiOptions& opt, int i, int j) {
  return !opt.degree_slack || j - i <= (r.vertices - 1) + *opt.degree_slack;
}

inline BettiTable koszul_betti(const BiRing& r, const GroebnerBasis& gb, const BettiOptions& opt,
                               const Deadline& deadline) {
  auto bound = initial_betti(r, gb.leading_monomials(), deadline);
  BettiTable table;
  struct Task {
    FineDegree d;
    int lo, hi;
  };
  std::vector<Task> tasks;
  for (const auto& [d, row] : bound) {
    int lo = -1, hi = -1;
    bool even = false, odd = false;
    for (const auto& [i, b] : row) {
      (i % 2 ? odd : even) = true;
      if (!within_cap(r, opt, i, d.total())) continue;
      if (lo < 0) lo = i;
      hi = i;
    }
    if (lo < 0) continue;
    if (opt.initial_bound && !(even && odd)) {
      // Upper semicontinuity plus equal Euler characteristics pin these down.
      for (const auto& [i, b] : row)
        if (within_cap(r, opt, i, d.total())) table.add(i, d, b);
      continue;
    }
    if (!opt.initial_bound) lo = 0, hi = 2 * d.total();
    tasks.push_back({d, lo, hi});
  }
  std::vector<std::map<int, long long>> results(tasks.size());
  std::vector<NormalFormCache> caches(static_cast<std::size_t>(resolve_threads(opt.threads)));
  parallel_for(tasks.size(), opt.threads, [&](std::size_t t, unsigned w) {
    KoszulStrand strand(r, gb, caches[w], deadline);
    results[t] = strand.betti(tasks[t].d, tasks[t].lo, tasks[t].hi);
  });
  for (std::size_t t = 0; t < tasks.size(); ++t)
    for (const auto& [i, b] : results[t])
      if (within_cap(r, opt, i, tasks[t].d.total())) table.add(i, tasks[t].d, b);
  return table;
}

// ---------------------------------------------------------------------------
// Minimal free resolution built degree by degree with linear algebra only.

struct ResolutionGenerator {
  FineDegree degree;
  // Image in the previous free module: (generator index, coefficient polynomial).
  std::vector<std::pair<std::uint32_t, Poly>> image;
};

class ResolutionBuilder {
 public:
  ResolutionBuilder(const BiRing& r, const GroebnerBasis& gb, const Deadline& deadline)
      : r_(r), gb_(gb), deadline_(deadline) {
    levels_.push_back({ResolutionGenerator{FineDegree{}, {}}});
  }

  /// Processes one degree; every degree below it must have been processed.
  void step(const FineDegree& d) {
    add_level_one(d);
    for (std::size_t i = 1; i < levels_.size(); ++i) {
      if (!add_syzygies(d, static_cast<int>(i))) break;
    }
  }

  const std::vector<std::vector<ResolutionGenerator>>& levels() const { return levels_; }

 private:
  struct Basis {
    std::vector<std::pair<std::uint32_t, Monomial>> cells;
    std::unordered_map<CellKey, std::uint32_t, CellKeyHash> index;
  };

  // Basis of (F_i)_D: pairs (generator, monomial of the complementary degree).
  Basis basis(int level, const FineDegree& d) const {
    Basis b;
    const auto& gens = levels_[level];
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      if (!fine_leq(gens[g].degree, d)) continue;
      fine_monomials(r_, minus(d, gens[g].degree), [&](const Monomial& m) {
        b.index.emplace(CellKey{g, m}, static_cast<std::uint32_t>(b.cells.size()));
        b.cells.push_back({g, m});
      });
    }
    return b;
  }

  SparseVec image_row(const ResolutionGenerator& gen, const Monomial& m, const Basis& target) const {
    const PrimeField& f = r_.ring.field;
    SparseVec row;
    for (const auto& [h, p] : gen.image)
      for (const Term& t : p) {
        auto hit = target.index.find(CellKey{h, m * t.m});
        if (hit == target.index.end()) throw std::logic_error("resolution map left its degree");
        row.push_back({hit->second, t.c});
      }
    normalize(f, row);
    return row;
  }

  // Echelon form of the image of the generators of `level` of degree < D in (F_{level-1})_D.
  Echelon old_image(int level, const FineDegree& d, const Basis& target) const {
    Echelon e(r_.ring.field);
    if (level >= static_cast<int>(levels_.size())) return e;
    for (const ResolutionGenerator& gen : levels_[level]) {
      if (gen.degree == d || !fine_leq(gen.degree, d)) continue;
      fine_monomials(r_, minus(d, gen.degree), [&](const Monomial& m) {
        deadline_.check();
        e.insert(image_row(gen, m, target));
      });
    }
    return e;
  }

  void add_level_one(const FineDegree& d) {
    Basis target = basis(0, d);
    if (levels_.size() < 2) levels_.emplace_back();
    Echelon e = old_image(1, d, target);
    for (const Poly& g : gb_.polys()) {
      FineDegree gd = fine_degree(r_, g.front().m);
      if (!fine_leq(gd, d)) continue;
      fine_monomials(r_, minus(d, gd), [&](const Monomial& m) {
        ResolutionGenerator gen{d, {{0u, scale(r_.ring, g, 1, m)}}};
        if (e.insert(image_row(gen, Monomial{}, target))) levels_[1].push_back(std::move(gen));
      });
    }
  }

  // New generators of level i+1 in degree D: kernel of (F_i)_D -> (F_{i-1})_D
  // modulo the image of older generators. Returns false when F_i is zero in D.
  bool add_syzygies(const FineDegree& d, int i) {
    Basis source = basis(i, d);
    if (source.cells.empty()) return false;
    Basis target = basis(i - 1, d);
    std::vector<SparseVec> images;
    for (const auto& [g, m] : source.cells) {
      deadline_.check();
      images.push_back(image_row(levels_[i][g], m, target));
    }
    std::vector<SparseVec> kernel = kernel_basis(r_.ring.field, images);
    if (kernel.empty()) return true;
    if (static_cast<int>(levels_.size()) <= i + 1) levels_.emplace_back();
    Echelon e = old_image(i + 1, d, source);
    for (SparseVec& z : kernel) {
      deadline_.check();
      if (!e.insert(z)) continue;
      ResolutionGenerator gen{d, {}};
      std::map<std::uint32_t, Poly> parts;
      for (const SparseEntry& c : z) {
        const auto& [g, m] = source.cells[c.col];
        parts[g].push_back({m, c.val});
      }
      for (auto& [g, p] : parts) {
        sort_terms(r_.ring, p);
        gen.image.emplace_back(g, std::move(p));
      }
      levels_[i + 1].push_back(std::move(gen));
    }
    return true;
  }

  const BiRing& r_;
  const GroebnerBasis& gb_;
  const Deadline& deadline_;
  std::vector<std::vector<ResolutionGenerator>> levels_;
};

inline BettiTable resolution_betti(const BiRing& r, const GroebnerBasis& gb, const BettiOptions& opt,
                                   const Deadline& deadline) {
  std::vector<Monomial> lms = gb.leading_monomials();
  std::vector<FineDegree> degrees;
  {
    std::set<FineDegree> seen;
    for (const Monomial& b : lcm_closure(lms, deadline)) seen.insert(fine_degree(r, b));
    degrees.assign(seen.begin(), seen.end());
  }
  std::stable_sort(degrees.begin(), degrees.end(),
                   [](const FineDegree& a, const FineDegree& b) { return a.total() < b.total(); });
  ResolutionBuilder builder(r, gb, deadline);
  for (const FineDegree& d : degrees) builder.step(d);
  BettiTable table;
  table.add(0, FineDegree{}, 1);
  const auto& levels = builder.levels();
  for (std::size_t i = 1; i < levels.size(); ++i)
    for (const ResolutionGenerator& g : levels[i])
      if (within_cap(r, opt, static_cast<int>(i), g.degree.total())) table.add(static_cast<int>(i), g.degree, 1);
  return table;
}

}  // namespace detail

/// Minimal graded Betti numbers of S/I over the ring's prime field.
inline BettiTable betti_table(const Ideal& ideal, const BettiOptions& opt = {}) {
  Deadline deadline(opt.timeout_seconds);
  GroebnerBasis gb = groebner_basis(ideal);
  if (gb.is_unit_ideal()) return {};
  return opt.backend == BettiBackend::Koszul ? detail::koszul_betti(ideal.ring, gb, opt, deadline)
                                             : detail::resolution_betti(ideal.ring, gb, opt, deadline);
}

}  // namespace beireg::algebra
