#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "beireg/error.hpp"
#include "beireg/families.hpp"
#include "beireg/graph.hpp"

namespace beireg {

struct RandomExprOptions {
  int max_parts = 3;
  int max_chain = 5;
  int max_m = 6;
  // Three F_1's in a row evaluate to F_2, so (alpha, beta) of the expression
  // is not recoverable from the graph beyond this many.
  int max_single_edges = 2;
  int max_vertices = kMaxGraphOrder;
};

/// A random *-combination of F leaves and circ-chains with every entry >= 3.
/// Draws are repeated until the graph fits in `max_vertices`.
inline ExprPtr random_normal_form(std::mt19937_64& rng, const RandomExprOptions& opt = {}) {
  if (opt.max_m < 3 || opt.max_chain < 2 || opt.max_parts < 1) throw InputError("random expression options too small");
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    int parts = uniform(1, opt.max_parts);
    int single_edges = 0;
    int vertices = 1 - parts;
    std::vector<ExprPtr> items;
    for (int p = 0; p < parts; ++p) {
      if (uniform(0, 1) == 0) {
        int m = uniform(1, opt.max_m);
        if (m == 1 && ++single_edges > opt.max_single_edges) m = uniform(2, opt.max_m);
        items.push_back(expr_F(m));
        vertices += 2 * m;
        continue;
      }
      std::vector<int> ms(static_cast<std::size_t>(uniform(2, opt.max_chain)));
      for (int& m : ms) m = uniform(3, opt.max_m), vertices += 2 * m;
      vertices -= 3 * (static_cast<int>(ms.size()) - 1);
      items.push_back(expr_circ_chain(ms));
    }
    if (vertices <= opt.max_vertices) return expr_chain(GlueOp::Star, items);
  }
}

}  // namespace beireg
