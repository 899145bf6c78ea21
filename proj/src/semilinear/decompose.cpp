// Cylindrical decomposition over Q. The formula is first split into disjoint convex
// pieces; each piece gets its own cylindrical decomposition, pruned by the piece's
// successive projections.
#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "igusa/semilinear/qcell.hpp"

namespace igusa::semilinear {

namespace {

long top_var(const Affine& a) {
  for (size_t i = a.arity(); i-- > 0;)
    if (a.coef[i] != 0) return static_cast<long>(i);
  return -1;
}

std::optional<Affine> normalized(const Affine& a, size_t n) {
  long k = top_var(a);
  if (k < 0) return std::nullopt;
  return a.extended(n) * Rat(1 / a.coef[static_cast<size_t>(k)]);
}

struct AffineLess {
  bool operator()(const Affine& a, const Affine& b) const {
    if (a.coef != b.coef) return std::lexicographical_compare(a.coef.begin(), a.coef.end(), b.coef.begin(), b.coef.end());
    return a.constant < b.constant;
  }
};

using Pieces = std::vector<QSystem>;

QSystem meet(const QSystem& a, const QSystem& b) {
  QSystem s = a;
  for (const auto& c : b.cs) s.cs.push_back(c);
  s.trivially_false = a.trivially_false || b.trivially_false;
  s.simplify();
  return s;
}

// p \ q as disjoint convex pieces.
Pieces minus_piece(const QSystem& p, const QSystem& q) {
  if (!meet(p, q).feasible()) return {p};
  Pieces out;
  QSystem acc = p;
  for (const auto& c : q.cs) {
    std::vector<QConstraint> negs;
    if (c.kind == CKind::GE) negs.push_back({-c.a, CKind::GT});
    else if (c.kind == CKind::GT) negs.push_back({-c.a, CKind::GE});
    else negs = {{c.a, CKind::GT}, {-c.a, CKind::GT}};
    for (const auto& nc : negs) {
      QSystem t = acc;
      t.cs.push_back(nc);
      t.simplify();
      if (t.feasible()) out.push_back(t);
    }
    acc.cs.push_back(c);
    acc.simplify();
    if (!acc.feasible()) break;
  }
  return out;
}

Pieces minus_all(Pieces ps, const Pieces& qs) {
  for (const auto& q : qs) {
    Pieces next;
    for (const auto& p : ps)
      for (auto& r : minus_piece(p, q)) next.push_back(std::move(r));
    ps = std::move(next);
  }
  return ps;
}

Pieces pieces(const Formula& f, size_t n) {
  switch (f.kind) {
    case Formula::Kind::True: return {QSystem(n)};
    case Formula::Kind::False: return {};
    case Formula::Kind::Atom: {
      if (f.rel == Rel::CONG) throw std::invalid_argument("decompose: congruence atoms are not Q-linear");
      if (f.term.arity() > n) throw std::invalid_argument("decompose: atom arity exceeds set arity");
      Affine t = f.term.extended(n);
      auto one = [&](const Affine& a, CKind k) {
        QSystem s(n);
        s.add(a, k);
        s.simplify();
        return s.trivially_false ? Pieces{} : Pieces{s};
      };
      switch (f.rel) {
        case Rel::GE: return one(t, CKind::GE);
        case Rel::GT: return one(t, CKind::GT);
        case Rel::LE: return one(-t, CKind::GE);
        case Rel::LT: return one(-t, CKind::GT);
        case Rel::EQ: return one(t, CKind::EQ);
        case Rel::NE: {
          Pieces a = one(t, CKind::GT), b = one(-t, CKind::GT);
          a.insert(a.end(), b.begin(), b.end());
          return a;
        }
        default: break;
      }
      return {};
    }
    case Formula::Kind::And: {
      Pieces acc{QSystem(n)};
      for (const auto& k : f.kids) {
        Pieces kp = pieces(k, n), next;
        for (const auto& a : acc)
          for (const auto& b : kp) {
            QSystem m = meet(a, b);
            if (!m.trivially_false && m.feasible()) next.push_back(m);
          }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
    case Formula::Kind::Or: {
      Pieces acc;
      for (const auto& k : f.kids) {
        Pieces add = minus_all(pieces(k, n), acc);
        acc.insert(acc.end(), add.begin(), add.end());
      }
      return acc;
    }
    case Formula::Kind::Not: return minus_all({QSystem(n)}, pieces(f.kids[0], n));
    case Formula::Kind::Exists: {
      Pieces acc;
      for (const auto& p : pieces(f.kids[0], n + 1)) {
        QSystem pr = p.eliminate(n);
        if (pr.trivially_false || !pr.feasible()) continue;
        Pieces add = minus_all({pr}, acc);
        acc.insert(acc.end(), add.begin(), add.end());
      }
      return acc;
    }
  }
  return {};
}

// True when d has one sign (or vanishes identically) on the feasible set of s.
bool sign_invariant(const QSystem& s, const Affine& d) {
  auto lo = s.infimum(d);
  if (lo && (lo->value > 0 || (lo->value == 0 && !lo->attained))) return true;
  auto hi = s.supremum(d);
  if (hi && (hi->value < 0 || (hi->value == 0 && !hi->attained))) return true;
  return lo && hi && lo->value == 0 && hi->value == 0;
}

std::vector<QCell> convex_cad(const QSystem& s0, const std::vector<Affine>& extra) {
  size_t n = s0.arity;
  std::vector<QSystem> proj(n + 1);
  proj[n] = s0;
  proj[n].simplify();
  if (proj[n].trivially_false) return {};
  for (size_t k = n; k-- > 0;) {
    proj[k] = proj[k + 1].eliminate(k);
    if (proj[k].trivially_false) return {};
  }
  std::vector<std::set<Affine, AffineLess>> bucket(n);
  auto put = [&](const Affine& a) {
    if (auto p = normalized(a, n)) bucket[static_cast<size_t>(top_var(*p))].insert(*p);
  };
  for (const auto& a : extra) {
    if (a.arity() > n) throw std::invalid_argument("decompose: cut arity exceeds set arity");
    put(a);
  }
  for (size_t k = 0; k <= n; ++k)
    for (const auto& c : proj[k].cs) put(c.a);
  std::vector<std::vector<Affine>> roots(n);
  for (size_t k = n; k-- > 0;) {
    for (const auto& p : bucket[k]) {
      Affine r = -p;
      r.coef[k] = 0;
      r.coef.resize(k);
      roots[k].push_back(r);
    }
    for (size_t i = 0; i < roots[k].size(); ++i)
      for (size_t j = i + 1; j < roots[k].size(); ++j) {
        Affine d = roots[k][i] - roots[k][j];
        if (d.is_constant() || sign_invariant(proj[k], d)) continue;
        put(d);
      }
  }
  std::vector<QCell> cells(1);
  for (size_t k = 0; k < n; ++k) {
    std::vector<QCell> next;
    for (const auto& base : cells) {
      std::map<Rat, Affine> at;  // value at the sample -> a root taking it
      for (const auto& r : roots[k]) at.emplace(r.eval(base.sample), r);
      auto emit = [&](Level l, const Rat& v) {
        QCell c = base;
        c.arity = k + 1;
        c.levels.push_back(std::move(l));
        c.sample.push_back(v);
        if (proj[k + 1].satisfied_by(c.sample)) next.push_back(std::move(c));
      };
      std::optional<std::pair<Rat, Affine>> prev;
      for (const auto& [v, t] : at) {
        Level band;
        if (prev) band.lo = prev->second;
        band.hi = t;
        emit(band, prev ? Rat((prev->first + v) / 2) : Rat(v - 1));
        Level sec;
        sec.kind = Level::Kind::Section;
        sec.sec = t;
        emit(sec, v);
        prev = std::make_pair(v, t);
      }
      Level band;
      if (prev) band.lo = prev->second;
      emit(band, prev ? Rat(prev->first + 1) : Rat(0));
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace

SemilinearSet decompose(const Formula& f, size_t arity, const std::vector<Affine>& extra) {
  std::vector<QCell> cells;
  for (const auto& p : pieces(f, arity))
    for (auto& c : convex_cad(p, extra)) cells.push_back(std::move(c));
  return SemilinearSet::from_cells(arity, std::move(cells));
}

}  // namespace igusa::semilinear
