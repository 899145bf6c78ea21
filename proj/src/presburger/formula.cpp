// Copyright (c) 2026 The igusa authors. Licensed under the MIT license.

#include "igusa/presburger/formula.hpp"

#include <stdexcept>

namespace igusa::presburger {

LinTerm clear_denominators(const Affine& a, size_t n) {
  Int d = a.constant.get_den();
  for (const auto& c : a.coef) d = lcm(d, c.get_den());
  LinTerm t(n);
  for (size_t i = 0; i < a.coef.size(); ++i) {
    if (i >= n) {
      if (a.coef[i] != 0) throw std::invalid_argument("affine form mentions an unknown variable");
      continue;
    }
    Rat v = a.coef[i] * d;
    t.coef[i] = v.get_num();
  }
  t.constant = Rat(a.constant * d).get_num();
  return t;
}

namespace {

PresburgerSet atom_set(const Formula& f, size_t n) {
  if (f.rel == Rel::CONG) {
    for (const auto& c : f.term.coef)
      if (!is_integer(c)) throw std::invalid_argument("congruence atoms need integer coefficients");
    if (!is_integer(f.term.constant)) throw std::invalid_argument("congruence atoms need integer coefficients");
    PCell c(n);
    c.add_cong(clear_denominators(f.term, n), f.modulus);
    return PresburgerSet::from_cell(c);
  }
  LinTerm t = clear_denominators(f.term, n);
  auto ge = [&](const LinTerm& u) {
    PCell c(n);
    c.add_ge(u);
    return PresburgerSet::from_cell(c);
  };
  LinTerm minus_one = LinTerm::constant_term(n, 1);
  switch (f.rel) {
    case Rel::GE: return ge(t);
    case Rel::GT: return ge(t - minus_one);
    case Rel::LE: return ge(-t);
    case Rel::LT: return ge(-t - minus_one);
    case Rel::EQ: {
      PCell c(n);
      c.add_eq(t);
      return PresburgerSet::from_cell(c);
    }
    case Rel::NE: return ge(t - minus_one).unite(ge(-t - minus_one));
    case Rel::CONG: break;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PresburgerSet to_set(const Formula& f, size_t n) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return PresburgerSet::universe(n);
    case K::False: return PresburgerSet::empty(n);
    case K::Atom: return atom_set(f, n);
    case K::And: {
      PresburgerSet s = PresburgerSet::universe(n);
      for (const auto& k : f.kids) {
        s = s.intersect(to_set(k, n));
        if (s.is_empty()) break;
      }
      return s;
    }
    case K::Or: {
      PresburgerSet s = PresburgerSet::empty(n);
      for (const auto& k : f.kids) s = s.unite(to_set(k, n));
      return s;
    }
    case K::Not: return to_set(f.kids[0], n).complement();
    case K::Exists: return to_set(f.kids[0], n + 1).eliminate(n);
  }
  throw std::logic_error("unreachable");
}

Formula to_formula(const PresburgerSet& s) {
  size_t n = s.arity();
  std::vector<Formula> disj;
  for (const auto& c : s.cells()) {
    std::vector<Formula> conj;
    for (const auto& t : c.ineqs) {
      Affine a(n);
      for (size_t i = 0; i < n; ++i) a.coef[i] = t.coef[i];
      a.constant = t.constant;
      conj.push_back(Formula::atom(a, Rel::GE));
    }
    for (const auto& cg : c.congs) {
      Affine a(n);
      for (size_t i = 0; i < n; ++i) a.coef[i] = cg.coef[i];
      a.constant = -cg.r;
      conj.push_back(Formula::atom(a, Rel::CONG, cg.m));
    }
    disj.push_back(conj.empty() ? Formula::truth(true) : Formula::conj(conj));
  }
  if (disj.empty()) return Formula::truth(false);
  return Formula::disj(disj);
}

}  // namespace igusa::presburger
