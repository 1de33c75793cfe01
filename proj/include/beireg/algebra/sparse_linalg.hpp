#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "beireg/algebra/polynomial.hpp"

namespace beireg::algebra {

struct SparseEntry {
  std::uint32_t col;
  std::uint32_t val;
};

/// Sparse vector over F_p, entries sorted by column, no zeros.
using SparseVec = std::vector<SparseEntry>;

inline void normalize(const PrimeField& f, SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  SparseVec out;
  for (const SparseEntry& e : v) {
    if (!out.empty() && out.back().col == e.col)
      out.back().val = f.add(out.back().val, e.val);
    else
      out.push_back(e);
    if (!out.empty() && out.back().val == 0) out.pop_back();
  }
  v = std::move(out);
}

// a - c*b
inline SparseVec axpy(const PrimeField& f, const SparseVec& a, std::uint32_t c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, f.neg(f.mul(c, b[j].val))});
      ++j;
    } else {
      std::uint32_t v = f.sub(a[i].val, f.mul(c, b[j].val));
      if (v) out.push_back({a[i].col, v});
      ++i, ++j;
    }
  }
  return out;
}

/// Row echelon form grown one vector at a time. Pivot rows are monic at
/// their leading column. Optionally tracks each stored row as a combination
/// of the inserted vectors, which yields kernels.
class Echelon {
 public:
  explicit Echelon(const PrimeField& f, bool track = false) : f_(f), track_(track) {}

  // Reduces v (and its tag) against the stored pivots. Returns true and stores
  // the reduced vector if it is independent.
  bool insert(SparseVec v, SparseVec tag = {}) {
    reduce(v, tag);
    if (v.empty()) {
      last_dependency_ = std::move(tag);
      return false;
    }
    std::uint32_t inv = f_.inv(v.front().val);
    for (SparseEntry& e : v) e.val = f_.mul(e.val, inv);
    if (track_)
      for (SparseEntry& e : tag) e.val = f_.mul(e.val, inv);
    pivot_.emplace(v.front().col, rows_.size());
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    return true;
  }

  bool independent(SparseVec v) const {
    SparseVec tag;
    reduce(v, tag);
    return !v.empty();
  }

  std::size_t rank() const { return rows_.size(); }

  // The tag of the last dependent insert: a combination of inserted tags that
  // maps to zero.
  const SparseVec& last_dependency() const { return last_dependency_; }

 private:
  void reduce(SparseVec& v, SparseVec& tag) const {
    // Entries moved to `head` have no pivot; eliminating a later column never
    // touches them since pivot rows start at their pivot column.
    SparseVec head;
    std::size_t s = 0;
    while (s < v.size()) {
      auto it = pivot_.find(v[s].col);
      if (it == pivot_.end()) {
        ++s;
        continue;
      }
      std::uint32_t c = v[s].val;
      head.insert(head.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s));
      SparseVec rest(v.begin() + static_cast<std::ptrdiff_t>(s), v.end());
      v = axpy(f_, rest, c, rows_[it->second]);
      if (track_) tag = axpy(f_, tag, c, tags_[it->second]);
      s = 0;
    }
    if (!head.empty()) {
      head.insert(head.end(), v.begin(), v.end());
      v = std::move(head);
    }
  }

  PrimeField f_;
  bool track_;
  std::vector<SparseVec> rows_, tags_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_;
  SparseVec last_dependency_;
};

/// Rank of a list of rows. `tick` is called between rows so long
/// eliminations can be interrupted.
template <class Tick>
std::size_t sparse_rank(const PrimeField& f, std::vector<SparseVec> rows, Tick&& tick) {
  // Shorter rows first keeps fill-in down.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SparseVec& a, const SparseVec& b) { return a.size() < b.size(); });
  Echelon e(f);
  for (SparseVec& r : rows) {
    tick();
    if (!r.empty()) e.insert(std::move(r));
  }
  return e.rank();
}

inline std::size_t sparse_rank(const PrimeField& f, std::vector<SparseVec> rows) {
  return sparse_rank(f, std::move(rows), [] {});
}

/// Basis of {c : sum_k c_k images[k] = 0}, as sparse vectors over the index k.
inline std::vector<SparseVec> kernel_basis(const PrimeField& f, const std::vector<SparseVec>& images) {
  Echelon e(f, true);
  std::vector<SparseVec> out;
  for (std::size_t k = 0; k < images.size(); ++k) {
    SparseVec tag{{static_cast<std::uint32_t>(k), 1}};
    if (!e.insert(images[k], tag)) {
      SparseVec dep = e.last_dependency();
      normalize(f, dep);
      out.push_back(std::move(dep));
    }
  }
  return out;
}

}  // namespace beireg::algebra
