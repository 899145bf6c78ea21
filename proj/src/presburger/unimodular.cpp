// Copyright 2026 igusa contributors
// SPDX-License-Identifier: MIT

#include "igusa/presburger/unimodular.hpp"

#include <stdexcept>

#include "igusa/core/qlinalg.hpp"

namespace igusa::presburger {

IntVec AffinePiece::apply(const IntVec& x) const {
  IntVec y = mat_vec(matrix, x);
  for (size_t i = 0; i < y.size(); ++i) y[i] += offset[i];
  return y;
}

std::optional<IntVec> PAffineMap::apply(const IntVec& x) const {
  for (const auto& p : pieces)
    if (p.domain.contains(x)) return p.apply(x);
  return std::nullopt;
}

namespace {

// Cell over (y, x) in Z^{2n} with x in c and y = A x + a.
PCell graph_cell(const PCell& c, const IntMat& A, const IntVec& a) {
  size_t n = c.arity;
  std::vector<LinTerm> xs;
  for (size_t i = 0; i < n; ++i) xs.push_back(LinTerm::var(2 * n, n + i));
  PCell g = c.pullback(xs, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    LinTerm t = LinTerm::var(2 * n, i);
    for (size_t j = 0; j < n; ++j) t.coef[n + j] -= A[i][j];
    t.constant = -a[i];
    g.add_eq(t);
  }
  g.normalize();
  return g;
}

PresburgerSet in_box_first(const PresburgerSet& s, const Box& box) {
  PCell b(s.arity());
  for (size_t i = 0; i < s.arity(); ++i) {
    b.add_ge(LinTerm::var(s.arity(), i) - LinTerm::constant_term(s.arity(), box.lo[i]));
    b.add_ge(LinTerm::constant_term(s.arity(), box.hi[i]) - LinTerm::var(s.arity(), i));
  }
  return s.intersect(PresburgerSet::from_cell(b));
}

std::optional<IntVec> witness_in(const PresburgerSet& s, const Box& box) {
  if (s.is_empty()) return std::nullopt;
  if (auto p = in_box_first(s, box).find_point()) return p;
  return s.find_point();
}

// Implicit equalities of c (inequalities tight on all of c).
std::vector<LinTerm> implicit_equalities(const PCell& c) {
  std::vector<LinTerm> eqs;
  for (const auto& t : c.ineqs) {
    PCell probe = c;
    probe.add_ge(t - LinTerm::constant_term(c.arity, 1));
    if (cell_is_empty(probe)) eqs.push_back(t);
  }
  return eqs;
}

struct Ctx {
  const UnimodularOptions& opt;
  std::vector<AffinePiece> out;
  std::string fail;
  Int index = 0;
  IntVec fail_point;
};

bool try_hull(const PCell& c, const IntMat& A, const IntVec& a, const IntVec& x0, Ctx& ctx) {
  size_t n = c.arity;
  auto eqs = implicit_equalities(c);
  IntMat E;
  for (const auto& t : eqs) E.push_back(t.coef);
  IntMat K = E.empty() ? identity_mat(n) : kernel_basis(E, n);  // saturated basis rows
  size_t r = K.size();
  if (r == 0) {
    // single point: translation
    AffinePiece p{c, identity_mat(n), IntVec(n)};
    IntVec y = mat_vec(A, x0);
    for (size_t i = 0; i < n; ++i) p.offset[i] = y[i] + a[i] - x0[i];
    ctx.out.push_back(p);
    return true;
  }
  // congruence sublattice in K-coordinates
  IntMat C;
  IntVec mods;
  for (const auto& cg : c.congs) {
    IntVec row(r, Int(0));
    for (size_t i = 0; i < r; ++i) row[i] = dot(cg.coef, K[i]);
    C.push_back(row);
    mods.push_back(cg.m);
  }
  IntMat Y = congruence_lattice(C, mods, r).basis;  // r x r
  // B = Y K (rows), W = A B^T (n x r), W' = W Y^{-T}
  IntMat B = mat_mul(Y, K);
  IntMat W = mat_mul(A, transpose(B, n));
  QMat Yt(r, RatVec(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) Yt[i][j] = Y[j][i];
  auto Yti = qinverse(Yt);
  if (!Yti) return false;
  IntMat Wp = zero_mat(n, r);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < r; ++j) {
      Rat s = 0;
      for (size_t k = 0; k < r; ++k) s += Rat(W[i][k]) * (*Yti)[k][j];
      if (!is_integer(s)) return false;
      Wp[i][j] = s.get_num();
    }
  // complete K^T and W' to unimodular matrices
  auto P = complete_unimodular(K, n);
  auto Q = complete_unimodular(transpose(Wp, r), n);
  if (!P || !Q) {
    ctx.index = maximal_minor_gcd(transpose(Wp, r), n);
    return false;
  }
  IntMat Astar = mat_mul(*Q, unimodular_inverse(*P));
  AffinePiece p{c, Astar, IntVec(n)};
  IntVec y = mat_vec(A, x0), ys = mat_vec(Astar, x0);
  for (size_t i = 0; i < n; ++i) p.offset[i] = y[i] + a[i] - ys[i];
  ctx.out.push_back(p);
  return true;
}

bool piece(const PCell& c, const IntMat& A, const IntVec& a, Ctx& ctx, int depth) {
  auto x0 = find_point(c);
  if (!x0) return true;
  Int det = determinant(A);
  if (abs(det) == 1) {
    ctx.out.push_back(AffinePiece{c, A, a});
    return true;
  }
  if (try_hull(c, A, a, *x0, ctx)) return true;
  if (depth > 8) {
    ctx.fail = "piece not unimodularizable (recursion limit)";
    ctx.fail_point = *x0;
    return false;
  }
  size_t n = c.arity;
  // slice along a bounded functional
  std::vector<LinTerm> cands;
  for (const auto& t : c.ineqs) cands.push_back(LinTerm(t.coef, 0));
  for (size_t i = 0; i < n; ++i) cands.push_back(LinTerm::var(n, i));
  for (const auto& l : cands) {
    Range rg = functional_range(c, l);
    if (rg.empty) return true;
    if (!rg.lo || !rg.hi || *rg.lo == *rg.hi) continue;
    if (*rg.hi - *rg.lo > Int(static_cast<unsigned long>(ctx.opt.max_finite_points))) continue;
    for (Int v = *rg.lo; v <= *rg.hi; ++v) {
      PCell s = c;
      s.add_eq(l - LinTerm::constant_term(n, v));
      s.normalize();
      if (s.infeasible || cell_is_empty(s)) continue;
      if (!piece(s, A, a, ctx, depth + 1)) return false;
    }
    return true;
  }
  ctx.fail = "piece is not piecewise unimodular (lattice index " + (ctx.index == 0 ? abs(det) : ctx.index).get_str() + ")";
  if (ctx.index == 0) ctx.index = abs(det);
  ctx.fail_point = *x0;
  return false;
}

}  // namespace

PresburgerSet affine_image(const PCell& c, const IntMat& A, const IntVec& a) {
  size_t n = c.arity;
  PresburgerSet g = PresburgerSet::from_cell(graph_cell(c, A, a));
  for (size_t i = 2 * n; i-- > n;) g = g.eliminate(i);
  return g;
}

Range functional_range(const PCell& c, const LinTerm& l) {
  size_t n = c.arity;
  PCell g = c.insert_var(n);  // z = l(x)
  LinTerm t = l.insert(n);
  t.coef[n] -= 1;
  g.add_eq(t);
  PresburgerSet s = PresburgerSet::from_cell(g);
  for (size_t i = n; i-- > 0;) s = s.eliminate(i);
  Range r;
  if (s.is_empty()) {
    r.empty = true;
    return r;
  }
  bool lo_ok = true, hi_ok = true;
  for (const auto& cell : s.cells()) {
    std::optional<Int> lo, hi;
    for (const auto& u : cell.ineqs) {
      if (u.coef[0] > 0) {
        Int b = ceil_div(-u.constant, u.coef[0]);
        if (!lo || b > *lo) lo = b;
      } else if (u.coef[0] < 0) {
        Int b = floor_div(u.constant, -u.coef[0]);
        if (!hi || b < *hi) hi = b;
      }
    }
    if (!lo) lo_ok = false;
    else if (!r.lo || *lo < *r.lo) r.lo = lo;
    if (!hi) hi_ok = false;
    else if (!r.hi || *hi > *r.hi) r.hi = hi;
  }
  if (!lo_ok) r.lo.reset();
  if (!hi_ok) r.hi.reset();
  return r;
}

UnimodularResult unimodularize(const PAffineMap& f, const PresburgerSet& D, const PresburgerSet& E,
                               UnimodularOptions opt) {
  size_t n = f.arity;
  if (D.arity() != n || E.arity() != n) throw std::invalid_argument("unimodularize: dimension mismatch");
  for (const auto& p : f.pieces) {
    if (p.domain.arity != n || p.matrix.size() != n || p.offset.size() != n)
      throw std::invalid_argument("unimodularize: piece dimension mismatch");
    for (const auto& row : p.matrix)
      if (row.size() != n) throw std::invalid_argument("unimodularize: matrix must be square");
  }
  if (opt.search_box.arity() != n) opt.search_box = Box::cube(n, -100, 100);

  UnimodularResult res;
  // restrict to D, check that f is defined everywhere
  std::vector<std::pair<PCell, size_t>> cells;  // (cell, piece index)
  PresburgerSet covered(n);
  for (size_t i = 0; i < f.pieces.size(); ++i) {
    PresburgerSet dom = PresburgerSet::from_cell(f.pieces[i].domain);
    if (!dom.intersect(covered).is_empty()) throw std::invalid_argument("unimodularize: piece domains overlap");
    covered = covered.unite(dom);
    PresburgerSet part = dom.intersect(D);
    for (const auto& c : part.cells()) cells.emplace_back(c, i);
  }
  if (auto p = witness_in(D.minus(covered), opt.search_box))
    throw std::invalid_argument("unimodularize: map undefined at a point of D");

  // injectivity within pieces
  for (const auto& [c, i] : cells) {
    const auto& A = f.pieces[i].matrix;
    if (determinant(A) != 0) continue;
    // pairs (x, x') in c x c with A x = A x' and x != x'
    PCell pair = c.pullback([&] {
      std::vector<LinTerm> v;
      for (size_t k = 0; k < n; ++k) v.push_back(LinTerm::var(2 * n, k));
      return v;
    }(), 2 * n);
    PCell second = c.pullback([&] {
      std::vector<LinTerm> v;
      for (size_t k = 0; k < n; ++k) v.push_back(LinTerm::var(2 * n, n + k));
      return v;
    }(), 2 * n);
    pair = pair.intersect(second);
    for (size_t r = 0; r < n; ++r) {
      LinTerm t(2 * n);
      for (size_t k = 0; k < n; ++k) {
        t.coef[k] = A[r][k];
        t.coef[n + k] = -A[r][k];
      }
      pair.add_eq(t);
    }
    PresburgerSet same = PresburgerSet::from_cell(pair);
    PCell diag(2 * n);
    for (size_t k = 0; k < n; ++k) diag.add_eq(LinTerm::var(2 * n, k) - LinTerm::var(2 * n, n + k));
    Box b2;
    b2.lo = opt.search_box.lo;
    b2.lo.insert(b2.lo.end(), opt.search_box.lo.begin(), opt.search_box.lo.end());
    b2.hi = opt.search_box.hi;
    b2.hi.insert(b2.hi.end(), opt.search_box.hi.begin(), opt.search_box.hi.end());
    if (auto w = witness_in(same.minus(PresburgerSet::from_cell(diag)), b2)) {
      res.reason = "not injective";
      res.witness = {IntVec(w->begin(), w->begin() + static_cast<long>(n)),
                     IntVec(w->begin() + static_cast<long>(n), w->end())};
      return res;
    }
  }
  // images pairwise disjoint, union equal to E
  std::vector<PresburgerSet> images;
  PresburgerSet all(n);
  for (const auto& [c, i] : cells) {
    PresburgerSet im = affine_image(c, f.pieces[i].matrix, f.pieces[i].offset);
    if (auto w = witness_in(im.intersect(all), opt.search_box)) {
      res.reason = "not injective: images of two pieces overlap";
      res.witness = {*w};
      return res;
    }
    all = all.unite(im);
    images.push_back(im);
  }
  if (auto w = witness_in(E.minus(all), opt.search_box)) {
    res.reason = "not surjective onto E: point not in image";
    res.witness = {*w};
    return res;
  }
  if (auto w = witness_in(all.minus(E), opt.search_box)) {
    res.reason = "image leaves E";
    res.witness = {*w};
    return res;
  }

  Ctx ctx{opt, {}, {}, 0, {}};
  for (const auto& [c, i] : cells) {
    if (!piece(c, f.pieces[i].matrix, f.pieces[i].offset, ctx, 0)) {
      res.reason = ctx.fail;
      res.witness = {ctx.fail_point};
      res.lattice_index = ctx.index;
      return res;
    }
  }
  res.ok = true;
  res.pieces = std::move(ctx.out);
  return res;
}

}  // namespace igusa::presburger
