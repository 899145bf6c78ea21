#include "igusa/vfrag/integrate.hpp"

#include <numeric>
#include <sstream>

#include "igusa/presburger/formula.hpp"
#include "igusa/semilinear/qcell.hpp"

namespace igusa::vfrag {

using genfun::ExponentData;
using genfun::RatFun;
using genfun::ZetaPiece;
using grothring::GammaRep;
using grothring::RVClass;
using presburger::LinTerm;

namespace {

std::string point_str(const IntVec& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i].get_str();
  os << ")";
  return os.str();
}

Affine sum_of_coords(size_t n) {
  Affine a(n);
  for (auto& c : a.coef) c = 1;
  return a;
}

SemilinearSet relaxation(const PCell& c) {
  if (!c.congs.empty()) throw RegionError("congruence conditions have no class over a divisible value group: " + c.str());
  std::vector<Formula> atoms;
  for (const auto& t : c.ineqs) {
    Affine a(c.arity);
    for (size_t j = 0; j < c.arity; ++j) a.coef[j] = Rat(t.coef[j]);
    a.constant = Rat(t.constant);
    atoms.push_back(Formula::atom(a, Rel::GE));
  }
  return semilinear::decompose(Formula::conj(atoms), c.arity);
}

std::vector<size_t> full_order(const std::vector<size_t>& order, size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<size_t> perm;
  for (size_t i : order) {
    if (i >= n || seen[i]) throw std::invalid_argument("integrate_ordered: bad coordinate order");
    seen[i] = true;
    perm.push_back(i);
  }
  for (size_t i = 0; i < n; ++i)
    if (!seen[i]) perm.push_back(i);
  return perm;
}

Affine permuted(const Affine& a, const std::vector<size_t>& perm) {
  Affine r(perm.size());
  for (size_t j = 0; j < perm.size(); ++j) r.coef[j] = a.coef[perm[j]];
  r.constant = a.constant;
  return r;
}

RatFun normalize(RatFun f, size_t n, Normalization norm) {
  if (norm == Normalization::MaximalIdeal) return f;
  genfun::Exps e(f.nvars(), 0);
  e[0] = -static_cast<long>(n);
  return f.times_monomial(e);
}

}  // namespace

std::vector<WeightedPart> refine_by_maps(const PresburgerSet& base, const std::vector<const QPiecewiseMap*>& maps) {
  std::vector<WeightedPart> parts{{base, {}}};
  for (const auto* m : maps) {
    std::vector<std::pair<PresburgerSet, Affine>> doms;
    for (const auto& p : m->pieces) {
      if (p.matrix.size() != 1) throw WeightError("weight form must be scalar valued");
      doms.emplace_back(lattice_points(SemilinearSet::from_cells(m->in, {p.domain})), p.component(0));
    }
    std::vector<WeightedPart> next;
    for (const auto& wp : parts) {
      PresburgerSet rest = wp.part;
      for (const auto& [d, f] : doms) {
        PresburgerSet piece = rest.intersect(d);
        if (piece.is_empty()) continue;
        rest = rest.minus(d);
        auto forms = wp.forms;
        forms.push_back(f);
        next.push_back({piece, forms});
      }
      if (auto x = rest.find_point()) throw WeightError("weight undefined at " + point_str(*x), *x);
    }
    parts = std::move(next);
  }
  return parts;
}

std::vector<ZetaPiece> zeta_pieces(const MonomialRegion& A, const ValWeight& w, bool with_kappa) {
  std::vector<ZetaPiece> out;
  const Stratum* s = A.full();
  if (!s) return out;
  size_t n = A.arity();
  if (w.n != n) throw WeightError("weight arity does not match the region");
  size_t k = with_kappa ? w.num_t() : 0;
  std::vector<const QPiecewiseMap*> maps;
  std::vector<size_t> index;
  if (with_kappa)
    for (const auto& [i, f] : w.kappa) {
      maps.push_back(&f);
      index.push_back(i);
    }
  if (w.gamma_form) maps.push_back(&*w.gamma_form);
  for (const auto& f : s->fibers) {
    PresburgerSet base = PresburgerSet::from_cell(f.cell).intersect(s->D);
    if (base.is_empty()) continue;
    genfun::LaurentPoly count = f.fiber.point_count();
    if (count.is_zero()) continue;
    for (const auto& wp : refine_by_maps(base, maps)) {
      ExponentData e;
      e.Lq = sum_of_coords(n);
      e.LT.assign(k, Affine(n));
      for (size_t j = 0; j < index.size(); ++j) e.LT[index[j]] = e.LT[index[j]] + wp.forms[j];
      if (w.gamma_form) e.Lq = e.Lq + wp.forms.back();
      out.push_back({count, wp.part, e});
    }
  }
  return out;
}

void check_integrality(const MonomialRegion& A, const ValWeight& w) {
  for (const auto& p : zeta_pieces(A, w)) {
    for (const auto& f : p.e.LT) {
      Int den = 1;
      for (const auto& c : f.coef) den = lcm(den, Int(c.get_den()));
      den = lcm(den, Int(f.constant.get_den()));
      if (den == 1) continue;
      // f integral iff den * f == 0 (mod den)
      LinTerm t(f.arity());
      for (size_t j = 0; j < f.arity(); ++j) t.coef[j] = Int(f.coef[j] * Rat(den));
      t.constant = Int(f.constant * Rat(den));
      const Int& scale = den;
      for (Int r = 1; r < scale; ++r) {
        PCell c(f.arity());
        c.add_cong(t - LinTerm::constant_term(f.arity(), r), scale);
        auto hit = p.delta.intersect(PresburgerSet::from_cell(c)).find_point();
        if (hit) throw WeightError("integrality violation in weight at " + point_str(*hit), *hit);
      }
    }
  }
}

RVClass integral_class(const MonomialRegion& A, const ValWeight& w) {
  check_integrality(A, w);
  RVClass out;
  size_t n = A.arity();
  for (const auto& s : A.strata()) {
    int m = static_cast<int>(s.dim());
    for (const auto& f : s.fibers) {
      grothring::ResPoly x = f.fiber.component(m);
      if (x.is_zero()) continue;
      PresburgerSet base = PresburgerSet::from_cell(f.cell).intersect(s.D);
      for (const auto& c : base.cells()) {
        SemilinearSet I = relaxation(c);
        GammaRep y = GammaRep::with_identity(I);
        grothring::VolumeFormData vol;
        RatVec ones(static_cast<size_t>(m), Rat(1));
        if (static_cast<size_t>(m) == n && w.gamma_form) {
          vol.omega = *w.gamma_form;
          for (auto& p : vol.omega.pieces)
            for (size_t j = 0; j < ones.size(); ++j) p.matrix[0][j] += 1;
        } else {
          vol.omega = QPiecewiseMap::affine(I, {ones}, {Rat(0)});
        }
        y.vol = vol;
        out = out + RVClass::tensor(x, y);
      }
    }
  }
  return out;
}

RatFun volume_series(const MonomialRegion& A, const ValWeight& w, long rho, Normalization norm) {
  return normalize(genfun::zeta_assemble(zeta_pieces(A, w, false), rho), A.arity(), norm);
}

RatFun zeta(const MonomialRegion& A, const ValWeight& w, long rho, Normalization norm) {
  return normalize(genfun::zeta_assemble(zeta_pieces(A, w, true), rho), A.arity(), norm);
}

RatFun integrate_ordered(const MonomialRegion& A, const ValWeight& w, const std::vector<size_t>& order, long rho) {
  auto perm = full_order(order, A.arity());
  auto pieces = zeta_pieces(A, w, true);
  for (auto& p : pieces) {
    p.delta = p.delta.permute(perm);
    p.e.Lq = permuted(p.e.Lq, perm);
    for (auto& t : p.e.LT) t = permuted(t, perm);
  }
  return genfun::zeta_assemble(pieces, rho);
}

genfun::FamilyReport zeta_family(const MonomialRegion& A, const ValWeight& w, const std::vector<long>& rho_list) {
  return genfun::uniform_family(zeta_pieces(A, w, true), rho_list);
}

RatFun class_volume(const RVClass& c, size_t n) {
  std::vector<ZetaPiece> pieces;
  auto it = c.grades().find(static_cast<int>(n));
  if (it == c.grades().end()) return RatFun::zero(1);
  for (const auto& t : it->second) {
    genfun::LaurentPoly count = t.x.point_count();
    PresburgerSet pts = lattice_points(t.y.I);
    if (!t.y.vol) throw std::invalid_argument("class_volume: tensor without a volume form");
    for (const auto& wp : refine_by_maps(pts, {&t.y.vol->omega})) {
      ExponentData e;
      e.Lq = wp.forms[0];
      pieces.push_back({count, wp.part, e});
    }
  }
  return genfun::zeta_assemble(pieces, 1);
}

}  // namespace igusa::vfrag
