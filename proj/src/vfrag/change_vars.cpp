// Copyright 2026 igusa contributors
// SPDX-License-Identifier: MIT

#include "igusa/vfrag/change_vars.hpp"

#include <algorithm>
#include <sstream>

#include "igusa/semilinear/qcell.hpp"
#include "igusa/vfrag/integrate.hpp"

namespace igusa::vfrag {

using presburger::LinTerm;

namespace {

QMat to_q(const IntMat& m) {
  QMat r;
  for (const auto& row : m) {
    RatVec v;
    for (const auto& x : row) v.push_back(Rat(x));
    r.push_back(v);
  }
  return r;
}

RatVec to_q(const IntVec& v) {
  RatVec r;
  for (const auto& x : v) r.push_back(Rat(x));
  return r;
}

// Images of the old coordinates as forms in the new ones: gamma = G gamma' + g0.
std::vector<LinTerm> images(const IntMat& G, const IntVec& g0) {
  std::vector<LinTerm> out;
  for (size_t j = 0; j < G.size(); ++j) out.emplace_back(G[j], g0[j]);
  return out;
}

Affine compose_form(const Affine& a, const QMat& G, const RatVec& g0) {
  size_t n = G.empty() ? 0 : G[0].size();
  Affine r(n);
  r.constant = a.constant + qdot(a.coef, g0);
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < a.coef.size(); ++j) r.coef[k] += a.coef[j] * G[j][k];
  return r;
}

QPiecewiseMap add_form(QPiecewiseMap f, const Affine& a) {
  for (auto& p : f.pieces) {
    for (size_t j = 0; j < a.coef.size(); ++j) p.matrix[0][j] += a.coef[j];
    p.offset[0] += a.constant;
  }
  return f;
}

std::string point_str(const IntVec& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace

QPiecewiseMap compose_affine(const QPiecewiseMap& f, const QMat& G, const RatVec& g0) {
  size_t n = G.empty() ? 0 : G[0].size();
  std::vector<Affine> im;
  for (size_t j = 0; j < G.size(); ++j) {
    Affine a(n);
    a.coef = G[j];
    a.constant = g0[j];
    im.push_back(a);
  }
  QPiecewiseMap out;
  out.in = n;
  out.out = f.out;
  for (const auto& p : f.pieces) {
    SemilinearSet dom = semilinear::decompose(semilinear::substitute(p.domain.formula(), im), n);
    QMat mat = qmul(p.matrix, G);
    RatVec off = qmul(p.matrix, g0);
    for (size_t i = 0; i < off.size(); ++i) off[i] += p.offset[i];
    for (const auto& c : dom.cells()) out.pieces.push_back({c, mat, off});
  }
  return out;
}

Pushforward change_of_variables(const MonomialRegion& A, const ValWeight& w, const MonomialMap& m) {
  size_t n = A.arity();
  if (m.arity() != n || w.n != n) throw std::invalid_argument("change_of_variables: arity mismatch");
  MonomialMap inv = m.inverse();
  auto back = images(inv.M, inv.vc);
  Pushforward out{MonomialRegion(n), ValWeight::trivial(n)};
  bool perm = m.is_permutation();
  // target coordinate of each source coordinate, for permutations
  std::vector<size_t> target(n);
  if (perm)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (m.M[i][j] == 1) target[j] = i;
  for (const auto& s : A.strata()) {
    Stratum t;
    if (s.zeros.empty()) {
      t.D = s.D.pullback(back, n);
      if (auto i = unbounded_below(t.D))
        throw std::invalid_argument("range violation: image base unbounded below in coordinate " + std::to_string(*i));
      for (const auto& f : s.fibers) {
        FiberPiece g{f.cell.pullback(back, n), f.fiber, std::nullopt};
        if (f.ac) {
          bool all_any = true;
          for (const auto& c : *f.ac) all_any = all_any && c.kind == AcCond::Kind::Any;
          if (all_any) {
            g.ac = f.ac;
          } else if (perm && !f.ac_map) {
            std::vector<AcCond> conds(n);
            for (size_t j = 0; j < n; ++j) conds[target[j]] = (*f.ac)[j];
            g.ac = conds;
          } else {
            // ac(x) = ac(y)^{M^-1} since ac of the uniformizer is 1
            g.ac = f.ac;
            g.ac_map = f.ac_map ? mat_mul(*f.ac_map, inv.M) : inv.M;
          }
        }
        t.fibers.push_back(std::move(g));
      }
    } else {
      if (!perm) continue;
      auto sup = s.support(n);
      for (size_t j : s.zeros) t.zeros.push_back(target[j]);
      std::sort(t.zeros.begin(), t.zeros.end());
      auto sup2 = t.support(n);
      size_t k = sup.size();
      // old local coordinate a (global sup[a]) = new local b - vc, where sup2[b] == target[sup[a]]
      std::vector<LinTerm> im;
      std::vector<size_t> where(k);
      for (size_t a = 0; a < k; ++a) {
        size_t b = static_cast<size_t>(std::find(sup2.begin(), sup2.end(), target[sup[a]]) - sup2.begin());
        where[a] = b;
        im.push_back(LinTerm::var(k, b) - LinTerm::constant_term(k, m.vc[target[sup[a]]]));
      }
      t.D = s.D.pullback(im, k);
      for (const auto& f : s.fibers) {
        FiberPiece g{f.cell.pullback(im, k), f.fiber, std::nullopt};
        if (f.ac) {
          std::vector<AcCond> conds(k);
          for (size_t a = 0; a < k; ++a) conds[where[a]] = (*f.ac)[a];
          g.ac = conds;
        }
        t.fibers.push_back(std::move(g));
      }
    }
    out.region.add_stratum(std::move(t));
  }
  QMat G = to_q(inv.M);
  RatVec g0 = to_q(inv.vc);
  for (const auto& [i, f] : w.kappa) out.weight.kappa.emplace_back(i, compose_affine(f, G, g0));
  // omega'(y) = omega(G y) - v(jcb F)(G y)
  Affine jac_back = -compose_form(m.jacobian_valuation(), G, g0);
  if (w.gamma_form)
    out.weight.gamma_form = add_form(compose_affine(*w.gamma_form, G, g0), jac_back);
  else
    out.weight.gamma_form = QPiecewiseMap::affine(universe_q(n), {jac_back.coef}, {jac_back.constant});
  return out;
}

semilinear::Verdict check_measure_preserving(const MonomialMap& F, const MeasureCarrier& src, const MeasureCarrier& dst) {
  size_t n = F.arity();
  const Stratum* a = src.region.full();
  const Stratum* b = dst.region.full();
  if (!a || !b || src.region.arity() != n || dst.region.arity() != n)
    throw std::invalid_argument("carrier mismatch: missing full-dimensional part");
  PresburgerSet pulled = b->D.pullback(images(F.M, F.vc), n);
  if (auto x = presburger::distinguishing_point(a->D, pulled))
    throw std::invalid_argument("carrier mismatch: F does not map the source base onto the target base at " +
                                point_str(*x));
  std::vector<const QPiecewiseMap*> maps;
  std::optional<QPiecewiseMap> after;
  if (src.omega) maps.push_back(&*src.omega);
  if (dst.omega) {
    after = compose_affine(*dst.omega, to_q(F.M), to_q(F.vc));
    maps.push_back(&*after);
  }
  Affine jac = F.jacobian_valuation();
  for (const auto& wp : refine_by_maps(a->D, maps)) {
    Affine delta = -jac;
    size_t k = 0;
    if (src.omega) delta = delta + wp.forms[k++];
    if (dst.omega) delta = delta - wp.forms[k++];
    Int den = 1;
    for (const auto& c : delta.coef) den = lcm(den, Int(c.get_den()));
    den = lcm(den, Int(delta.constant.get_den()));
    LinTerm t(n);
    for (size_t j = 0; j < n; ++j) t.coef[j] = Int(delta.coef[j] * Rat(den));
    t.constant = Int(delta.constant * Rat(den));
    for (const LinTerm& side : {t - LinTerm::constant_term(n, 1), -t - LinTerm::constant_term(n, 1)}) {
      PCell c(n);
      c.add_ge(side);
      if (auto x = wp.part.intersect(PresburgerSet::from_cell(c)).find_point()) {
        semilinear::Verdict v;
        v.ok = false;
        v.witness = to_q(*x);
        v.reason = "volume forms differ by " + delta.eval(to_q(*x)).get_str() + " at " + point_str(*x);
        return v;
      }
    }
  }
  return {};
}

}  // namespace igusa::vfrag
