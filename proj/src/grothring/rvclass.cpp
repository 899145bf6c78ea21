#include "igusa/grothring/rvclass.hpp"

#include <stdexcept>

namespace igusa::grothring {

using semilinear::Level;
using semilinear::QCell;
using semilinear::QPiece;

namespace {

std::string map_key(const QPiecewiseMap& f) {
  std::string s = std::to_string(f.in) + "->" + std::to_string(f.out) + ":";
  for (const auto& p : f.pieces) {
    s += "{" + p.domain.str() + ";";
    for (const auto& row : p.matrix) {
      for (const auto& v : row) s += to_str(v) + ",";
      s += ";";
    }
    for (const auto& v : p.offset) s += to_str(v) + ",";
    s += "}";
  }
  return s;
}

QPiecewiseMap zero_form(const SemilinearSet& I) { return QPiecewiseMap::constant(I, {Rat(0)}); }

// (x, y) -> a(x) + b(y) for scalar maps a, b.
QPiecewiseMap sum_form(const QPiecewiseMap& a, const QPiecewiseMap& b) {
  QPiecewiseMap p = semilinear::product_map(a, b);
  for (auto& piece : p.pieces) {
    RatVec row(p.in, Rat(0));
    for (size_t j = 0; j < p.in; ++j) row[j] = piece.matrix[0][j] + piece.matrix[1][j];
    piece.matrix = {row};
    piece.offset = {piece.offset[0] + piece.offset[1]};
  }
  p.out = 1;
  return p;
}

}  // namespace

std::string GammaRep::key() const {
  std::string s = std::to_string(I.arity()) + "|" + I.str() + "|" + map_key(f);
  if (vol) s += "|vol:" + map_key(vol->omega) + (vol->unit_twist ? "+tw" : "");
  return s;
}

GammaRep GammaRep::product(const GammaRep& o) const {
  GammaRep r;
  r.I = I.product(o.I);
  r.f = semilinear::product_map(f, o.f);
  if (vol || o.vol) {
    VolumeFormData a = vol ? *vol : VolumeFormData{zero_form(I), false};
    VolumeFormData b = o.vol ? *o.vol : VolumeFormData{zero_form(o.I), false};
    r.vol = VolumeFormData{sum_form(a.omega, b.omega), a.unit_twist || b.unit_twist};
  }
  return r;
}

GammaRep GammaRep::origin(int k) {
  return with_identity(SemilinearSet::point(RatVec(static_cast<size_t>(k), Rat(0))));
}

GammaRep GammaRep::half_line() {
  QCell c;
  c.arity = 1;
  Level l;
  l.kind = Level::Kind::Band;
  l.lo = Affine::konst(0, 0);
  c.levels.push_back(l);
  c.sample = {Rat(1)};
  return with_identity(SemilinearSet::from_cells(1, {c}));
}

GammaRep GammaRep::with_identity(const SemilinearSet& I) { return GammaRep{I, QPiecewiseMap::identity(I), std::nullopt}; }

GammaGradeClass GammaGradeClass::of(const GammaRep& r, const Int& c) {
  GammaGradeClass g;
  g.grade = r.grade();
  g.terms.emplace_back(c, r);
  return g;
}

GammaGradeClass GammaGradeClass::operator+(const GammaGradeClass& o) const {
  if (!terms.empty() && !o.terms.empty() && grade != o.grade) throw std::invalid_argument("GammaGradeClass: grade mismatch");
  GammaGradeClass r = *this;
  if (terms.empty()) r.grade = o.grade;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

Int GammaGradeClass::chi_g() const {
  Int s = 0;
  for (const auto& [c, r] : terms) s += c * r.euler().chi_g;
  return s;
}

Int GammaGradeClass::chi_b() const {
  Int s = 0;
  for (const auto& [c, r] : terms) s += c * r.euler().chi_b;
  return s;
}

void RVClass::add(int k, const ResPoly& x, const GammaRep& y) {
  if (x.is_zero()) return;
  auto d = x.degree();
  if (!d || *d != k) throw std::invalid_argument("RVClass: residue part " + x.str() + " is not homogeneous of degree " + std::to_string(k));
  if (y.grade() != k) throw std::invalid_argument("RVClass: Gamma part has grade " + std::to_string(y.grade()) + ", expected " + std::to_string(k));
  auto& v = grades_[k];
  std::string key = y.key();
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (it->y.key() != key) continue;
    it->x = it->x + x;
    if (it->x.is_zero()) v.erase(it);
    if (v.empty()) grades_.erase(k);
    return;
  }
  v.push_back(Tensor{x, y});
}

void RVClass::check() const {
  if (arith_ != Arith::Semiring) return;
  for (const auto& [k, ts] : grades_)
    for (const auto& t : ts)
      if (t.x.has_negative()) throw std::domain_error("negative coefficient in semiring mode: " + t.x.str());
}

RVClass RVClass::tensor(const ResPoly& x, const GammaRep& y, Arith a) {
  RVClass r(a);
  r.add(y.grade(), x, y);
  r.check();
  return r;
}

RVClass RVClass::one(Arith a) { return tensor(ResPoly::constant(1), GammaRep::origin(0), a); }

RVClass RVClass::from_res(const ResClass& x) {
  RVClass r(x.semiring() ? Arith::Semiring : Arith::Ring);
  for (const auto& [k, p] : x.components()) r.add(k, p, GammaRep::origin(k));
  return r;
}

std::vector<int> RVClass::grade_list() const {
  std::vector<int> g;
  for (const auto& [k, v] : grades_) g.push_back(k);
  return g;
}

RVClass RVClass::operator+(const RVClass& o) const {
  RVClass r = *this;
  if (o.arith_ == Arith::Ring) r.arith_ = Arith::Ring;
  for (const auto& [k, ts] : o.grades_)
    for (const auto& t : ts) r.add(k, t.x, t.y);
  r.check();
  return r;
}

RVClass RVClass::operator*(const Int& c) const {
  RVClass r(arith_);
  for (const auto& [k, ts] : grades_)
    for (const auto& t : ts) r.add(k, t.x * c, t.y);
  r.check();
  return r;
}

RVClass RVClass::operator-(const RVClass& o) const {
  if (arith_ == Arith::Semiring || o.arith_ == Arith::Semiring)
    throw std::domain_error("subtraction is not available in semiring mode");
  return *this + o * Int(-1);
}

RVClass RVClass::operator*(const RVClass& o) const {
  RVClass r(arith_ == Arith::Semiring && o.arith_ == Arith::Semiring ? Arith::Semiring : Arith::Ring);
  for (const auto& [ka, ta] : grades_)
    for (const auto& [kb, tb] : o.grades_)
      for (const auto& a : ta)
        for (const auto& b : tb) r.add(ka + kb, a.x * b.x, a.y.product(b.y));
  return r;
}

bool RVClass::same_form(const RVClass& o) const {
  RVClass d = *this + o * Int(-1);
  return d.is_zero();
}

std::string RVClass::str() const {
  if (grades_.empty()) return "0";
  std::string s;
  for (const auto& [k, ts] : grades_) {
    if (!s.empty()) s += " | ";
    s += "[" + std::to_string(k) + "]";
    for (size_t i = 0; i < ts.size(); ++i) {
      s += (i ? " + " : " ") + std::string("(") + ts[i].x.str() + ") (x) " + (k == 0 ? "pt" : ts[i].y.I.str());
    }
  }
  return s;
}

RVClass lift_gamma(const GammaGradeClass& x, LiftMode mode) {
  RVClass r;
  for (const auto& [c, rep] : x.terms) {
    GammaRep y = rep;
    if (mode == LiftMode::Mu) {
      if (!y.vol) y.vol = VolumeFormData{zero_form(y.I), false};
      y.vol->unit_twist = true;
    }
    r = r + RVClass::tensor(ResPoly::var("u", x.grade, c), y);
  }
  return r;
}

RVClass generator_j(JVariant variant, Arith a) {
  if (a == Arith::Semiring) throw std::domain_error("generator_j needs ring mode (it has a negative coefficient)");
  GammaRep h = GammaRep::half_line();
  GammaRep o = GammaRep::origin(1);
  switch (variant) {
    case JVariant::Plain:
      return RVClass::one() + RVClass::tensor(ResPoly::u(), h) - RVClass::tensor(ResPoly::v(), o);
    case JVariant::MuGamma:
      h.vol = VolumeFormData{zero_form(h.I), false};
      o.vol = VolumeFormData{zero_form(o.I), false};
      return RVClass::tensor(ResPoly::u(), h) - RVClass::tensor(ResPoly::v(), o);
    case JVariant::Mu:
      h.vol = VolumeFormData{zero_form(h.I), true};
      o.vol = VolumeFormData{QPiecewiseMap::identity(o.I), false};
      return RVClass::tensor(ResPoly::u(), h) - RVClass::tensor(ResPoly::v(), o);
  }
  throw std::logic_error("generator_j: bad variant");
}

}  // namespace igusa::grothring
