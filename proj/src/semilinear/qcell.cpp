// SPDX-License-Identifier: MIT
#include "igusa/semilinear/qcell.hpp"

#include <stdexcept>

namespace igusa::semilinear {

namespace {

RatVec prefix(const RatVec& x, size_t i) { return RatVec(x.begin(), x.begin() + static_cast<long>(i)); }

Affine shift(const Affine& a, size_t by) {
  Affine r(by + a.arity());
  for (size_t i = 0; i < a.arity(); ++i) r.coef[by + i] = a.coef[i];
  r.constant = a.constant;
  return r;
}

Affine fix_first(const Affine& a, const Rat& g) {
  Affine r = a;
  if (r.coef.empty()) return r;
  r.constant += r.coef[0] * g;
  r.coef.erase(r.coef.begin());
  return r;
}

}  // namespace

size_t QCell::dim() const {
  size_t d = 0;
  for (const auto& l : levels) d += l.kind == Level::Kind::Band;
  return d;
}

bool QCell::bounded() const {
  for (const auto& l : levels)
    if (l.kind == Level::Kind::Band && (!l.lo || !l.hi)) return false;
  return true;
}

bool QCell::contains(const RatVec& x) const {
  if (x.size() != arity) throw std::invalid_argument("QCell::contains: arity mismatch");
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& l = levels[i];
    RatVec p = prefix(x, i);
    if (l.kind == Level::Kind::Section) {
      if (x[i] != l.sec.eval(p)) return false;
    } else {
      if (l.lo && !(x[i] > l.lo->eval(p))) return false;
      if (l.hi && !(x[i] < l.hi->eval(p))) return false;
    }
  }
  return true;
}

QSystem QCell::system() const {
  QSystem s(arity);
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& l = levels[i];
    Affine xi = Affine::var(arity, i);
    if (l.kind == Level::Kind::Section) {
      s.add(xi - l.sec.extended(arity), CKind::EQ);
    } else {
      if (l.lo) s.add(xi - l.lo->extended(arity), CKind::GT);
      if (l.hi) s.add(l.hi->extended(arity) - xi, CKind::GT);
    }
  }
  return s;
}

Formula system_formula(const QSystem& s) {
  if (s.trivially_false) return Formula::truth(false);
  std::vector<Formula> atoms;
  for (const auto& c : s.cs) {
    Rel r = c.kind == CKind::EQ ? Rel::EQ : (c.kind == CKind::GT ? Rel::GT : Rel::GE);
    atoms.push_back(Formula::atom(c.a.extended(s.arity), r));
  }
  return Formula::conj(std::move(atoms));
}

Formula QCell::formula() const { return system_formula(system()); }

void QCell::hull(RatVec& base, QMat& dirs) const {
  size_t d = dim();
  base.assign(arity, Rat(0));
  dirs = qzero(arity, d);
  size_t t = 0;
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& l = levels[i];
    if (l.kind == Level::Kind::Band) {
      dirs[i][t++] = 1;
      continue;
    }
    base[i] = l.sec.constant;
    for (size_t j = 0; j < i; ++j) {
      const Rat& a = l.sec.coef[j];
      if (a == 0) continue;
      base[i] += a * base[j];
      for (size_t k = 0; k < d; ++k) dirs[i][k] += a * dirs[j][k];
    }
  }
}

RatVec QCell::point_at(const std::vector<Rat>& frac) const {
  RatVec x;
  size_t t = 0;
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& l = levels[i];
    if (l.kind == Level::Kind::Section) {
      x.push_back(l.sec.eval(x));
      continue;
    }
    Rat f = t < frac.size() ? frac[t] : Rat(1, 2);
    ++t;
    if (f <= 0 || f >= 1) throw std::invalid_argument("QCell::point_at: fraction outside (0,1)");
    if (l.lo && l.hi) {
      Rat a = l.lo->eval(x), b = l.hi->eval(x);
      x.push_back(a + f * (b - a));
    } else if (l.lo) {
      x.push_back(l.lo->eval(x) + 1 / f);
    } else if (l.hi) {
      x.push_back(l.hi->eval(x) - 1 / f);
    } else {
      x.push_back(1 / f - 2);
    }
  }
  return x;
}

void QCell::resample() { sample = point_at({}); }

QCell QCell::product(const QCell& o) const {
  QCell r;
  r.arity = arity + o.arity;
  r.levels = levels;
  for (const auto& l : o.levels) {
    Level m = l;
    m.sec = shift(l.sec, arity);
    if (l.lo) m.lo = shift(*l.lo, arity);
    if (l.hi) m.hi = shift(*l.hi, arity);
    r.levels.push_back(m);
  }
  r.sample = sample;
  r.sample.insert(r.sample.end(), o.sample.begin(), o.sample.end());
  return r;
}

QCell QCell::truncated(size_t k) const {
  if (k > arity) throw std::out_of_range("QCell::truncated");
  QCell r;
  r.arity = arity - k;
  r.levels.assign(levels.begin(), levels.begin() + static_cast<long>(r.arity));
  r.sample = prefix(sample, r.arity);
  return r;
}

std::optional<QCell> QCell::fiber(const Rat& g) const {
  if (arity == 0) throw std::invalid_argument("QCell::fiber: arity 0");
  const Level& l0 = levels[0];
  if (l0.kind == Level::Kind::Section) {
    if (l0.sec.constant != g) return std::nullopt;
  } else {
    if (l0.lo && !(g > l0.lo->constant)) return std::nullopt;
    if (l0.hi && !(g < l0.hi->constant)) return std::nullopt;
  }
  QCell r;
  r.arity = arity - 1;
  for (size_t i = 1; i < levels.size(); ++i) {
    Level m = levels[i];
    m.sec = fix_first(m.sec, g);
    if (m.lo) m.lo = fix_first(*m.lo, g);
    if (m.hi) m.hi = fix_first(*m.hi, g);
    r.levels.push_back(m);
  }
  r.resample();
  return r;
}

std::string QCell::str(const std::vector<std::string>& names) const {
  std::vector<std::string> nm = names;
  for (size_t i = nm.size(); i < arity; ++i) nm.push_back("x" + std::to_string(i + 1));
  std::string s = "{";
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& l = levels[i];
    if (i) s += ", ";
    if (l.kind == Level::Kind::Section) {
      s += nm[i] + " = " + l.sec.str(nm);
    } else {
      s += (l.lo ? l.lo->str(nm) : std::string("-oo")) + " < " + nm[i] + " < " +
           (l.hi ? l.hi->str(nm) : std::string("oo"));
    }
  }
  return s + "}";
}

SemilinearSet SemilinearSet::from_cells(size_t n, std::vector<QCell> cells) {
  SemilinearSet s(n);
  for (auto& c : cells) {
    if (c.arity != n) throw std::invalid_argument("SemilinearSet: arity mismatch");
    s.cells_.push_back(std::move(c));
  }
  return s;
}

SemilinearSet SemilinearSet::point(const RatVec& p) {
  QCell c;
  c.arity = p.size();
  for (size_t i = 0; i < p.size(); ++i) {
    Level l;
    l.kind = Level::Kind::Section;
    l.sec = Affine::konst(i, p[i]);
    c.levels.push_back(l);
  }
  c.sample = p;
  return from_cells(p.size(), {c});
}

bool SemilinearSet::contains(const RatVec& x) const {
  for (const auto& c : cells_)
    if (c.contains(x)) return true;
  return false;
}

Formula SemilinearSet::formula() const {
  std::vector<Formula> d;
  for (const auto& c : cells_) d.push_back(c.formula());
  return Formula::disj(std::move(d));
}

SemilinearSet SemilinearSet::intersect(const SemilinearSet& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("SemilinearSet::intersect: arity mismatch");
  SemilinearSet r(arity_);
  for (const auto& a : cells_)
    for (const auto& b : o.cells_) {
      QSystem s = a.system();
      for (const auto& c : b.system().cs) s.cs.push_back(c);
      if (!s.feasible()) continue;
      for (auto& c : decompose(system_formula(s), arity_).cells_) r.cells_.push_back(std::move(c));
    }
  return r;
}

SemilinearSet SemilinearSet::minus(const SemilinearSet& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("SemilinearSet::minus: arity mismatch");
  std::vector<QCell> pieces = cells_;
  for (const auto& b : o.cells_) {
    QSystem sb = b.system();
    std::vector<QCell> next;
    for (const auto& p : pieces) {
      QSystem both = p.system();
      for (const auto& c : sb.cs) both.cs.push_back(c);
      if (!both.feasible()) {
        next.push_back(p);
        continue;
      }
      Formula f = Formula::conj({p.formula(), Formula::neg(b.formula())});
      for (auto& c : decompose(f, arity_).cells_) next.push_back(std::move(c));
    }
    pieces = std::move(next);
  }
  return from_cells(arity_, std::move(pieces));
}

SemilinearSet SemilinearSet::unite(const SemilinearSet& o) const {
  SemilinearSet r = *this;
  for (auto& c : o.minus(*this).cells_) r.cells_.push_back(std::move(c));
  return r;
}

SemilinearSet SemilinearSet::complement() const {
  return decompose(Formula::truth(true), arity_).minus(*this);
}

SemilinearSet SemilinearSet::product(const SemilinearSet& o) const {
  SemilinearSet r(arity_ + o.arity_);
  for (const auto& a : cells_)
    for (const auto& b : o.cells_) r.cells_.push_back(a.product(b));
  return r;
}

SemilinearSet SemilinearSet::fiber(const Rat& g) const {
  if (arity_ == 0) throw std::invalid_argument("SemilinearSet::fiber: arity 0");
  SemilinearSet r(arity_ - 1);
  for (const auto& c : cells_)
    if (auto f = c.fiber(g)) r.cells_.push_back(*f);
  return r;
}

SemilinearSet SemilinearSet::image(const QMat& m, const RatVec& v) const {
  size_t out = m.size();
  if (v.size() != out) throw std::invalid_argument("SemilinearSet::image: offset size");
  for (const auto& row : m)
    if (row.size() != arity_) throw std::invalid_argument("SemilinearSet::image: matrix width");
  SemilinearSet r(out);
  for (const auto& c : cells_) {
    // variables (y, x); y = M x + v; project x away
    QSystem s(out + arity_);
    for (const auto& k : c.system().cs) s.add(shift(k.a, out), k.kind);
    for (size_t j = 0; j < out; ++j) {
      Affine e = Affine::var(out + arity_, j);
      for (size_t i = 0; i < arity_; ++i) e.coef[out + i] -= m[j][i];
      e.constant = -v[j];
      s.add(e, CKind::EQ);
    }
    s.simplify();
    for (size_t i = out + arity_; i-- > out;) s = s.eliminate(i);
    r = r.unite(decompose(system_formula(s), out));
  }
  return r;
}

SemilinearSet SemilinearSet::refine(const std::vector<Affine>& cuts) const {
  SemilinearSet r(arity_);
  for (const auto& c : cells_)
    for (auto& d : decompose(c.formula(), arity_, cuts).cells_) r.cells_.push_back(std::move(d));
  return r;
}

std::string SemilinearSet::str(const std::vector<std::string>& names) const {
  if (cells_.empty()) return "empty";
  std::string s;
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (i) s += " u ";
    s += cells_[i].str(names);
  }
  return s;
}

Formula substitute(const Formula& f, const std::vector<Affine>& images) {
  switch (f.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom: {
      Affine t;
      t.constant = f.term.constant;
      for (size_t i = 0; i < f.term.arity(); ++i)
        if (f.term.coef[i] != 0) t = t + images.at(i) * f.term.coef[i];
      size_t n = images.empty() ? 0 : images[0].arity();
      for (const auto& im : images) n = std::max(n, im.arity());
      return Formula::atom(t.extended(n), f.rel, f.modulus);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> k;
      for (const auto& c : f.kids) k.push_back(substitute(c, images));
      return f.kind == Formula::Kind::And ? Formula::conj(std::move(k)) : Formula::disj(std::move(k));
    }
    case Formula::Kind::Not: return Formula::neg(substitute(f.kids[0], images));
    case Formula::Kind::Exists: break;
  }
  throw std::invalid_argument("substitute: quantified formula");
}

}  // namespace igusa::semilinear
