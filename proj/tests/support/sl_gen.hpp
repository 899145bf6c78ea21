// Random Q-linear formulas for the semilinear property tests.
#pragma once

#include "gen.hpp"
#include "igusa/core/formula.hpp"

namespace testgen {

inline igusa::Affine random_affine(Rng& g, size_t n, long cb = 2, long kb = 3) {
  igusa::Affine a(n);
  bool any = false;
  while (!any) {
    for (size_t i = 0; i < n; ++i) {
      a.coef[i] = g.range(-cb, cb);
      any = any || a.coef[i] != 0;
    }
  }
  a.constant = igusa::make_rat(g.range(-kb * 2, kb * 2), 2);
  return a;
}

inline igusa::Formula random_ql_atom(Rng& g, size_t n) {
  static const std::vector<igusa::Rel> rels{igusa::Rel::GE, igusa::Rel::GT, igusa::Rel::LE, igusa::Rel::LT,
                                            igusa::Rel::EQ, igusa::Rel::NE};
  igusa::Rel r = g.coin(0.85) ? rels[static_cast<size_t>(g.range(0, 3))] : g.pick(rels);
  return igusa::Formula::atom(random_affine(g, n), r);
}

inline igusa::Formula random_ql(Rng& g, size_t n, int depth) {
  if (depth == 0 || g.coin(0.3)) return random_ql_atom(g, n);
  switch (g.range(0, 2)) {
    case 0: return igusa::Formula::conj({random_ql(g, n, depth - 1), random_ql(g, n, depth - 1)});
    case 1: return igusa::Formula::disj({random_ql(g, n, depth - 1), random_ql(g, n, depth - 1)});
    default: return igusa::Formula::neg(random_ql(g, n, depth - 1));
  }
}

inline igusa::RatVec random_point(Rng& g, size_t n) {
  igusa::RatVec x;
  for (size_t i = 0; i < n; ++i) x.push_back(g.coin(0.5) ? igusa::Rat(g.range(-4, 4)) : igusa::make_rat(g.range(-12, 12), 4));
  return x;
}

}  // namespace testgen
