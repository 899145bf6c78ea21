#include "igusa/vfrag/region.hpp"

#include <algorithm>
#include <sstream>

#include "igusa/core/intmat.hpp"
#include "igusa/presburger/formula.hpp"
#include "igusa/semilinear/qcell.hpp"
#include "igusa/semilinear/qlinear.hpp"

namespace igusa::vfrag {

using grothring::ResClass;
using grothring::ResPoly;
using presburger::LinTerm;

bool AcCond::holds(long ac) const {
  switch (kind) {
    case Kind::Any: return true;
    case Kind::Eq: return ac == c;
    case Kind::Ne: return ac != c;
  }
  return false;
}

ResClass ac_class(const std::vector<AcCond>& ac) {
  ResPoly p = ResPoly::constant(1);
  for (const auto& a : ac) {
    switch (a.kind) {
      case AcCond::Kind::Any: p = p * ResPoly::u(); break;
      case AcCond::Kind::Eq: p = p * ResPoly::v(); break;
      case AcCond::Kind::Ne: p = p * (ResPoly::u() - ResPoly::v()); break;
    }
  }
  return ResClass::from_poly(p);
}

FiberPiece FiberPiece::from_ac(const PCell& cell, const std::vector<AcCond>& ac) {
  if (ac.size() != cell.arity) throw RegionError("fiber: one angular condition per coordinate expected");
  return {cell, ac_class(ac), ac};
}

FiberPiece FiberPiece::symbolic(const PCell& cell, const ResClass& fiber) { return {cell, fiber, std::nullopt}; }

std::vector<size_t> Stratum::support(size_t n) const {
  std::vector<size_t> s;
  for (size_t i = 0; i < n; ++i)
    if (!std::binary_search(zeros.begin(), zeros.end(), i)) s.push_back(i);
  return s;
}

MonomialRegion& MonomialRegion::add_stratum(Stratum s) {
  std::sort(s.zeros.begin(), s.zeros.end());
  if (std::adjacent_find(s.zeros.begin(), s.zeros.end()) != s.zeros.end())
    throw RegionError("stratum: repeated zero coordinate");
  if (!s.zeros.empty() && s.zeros.back() >= n_) throw RegionError("stratum: zero coordinate out of range");
  if (s.D.arity() != n_ - s.zeros.size()) throw RegionError("stratum: base arity does not match the zero pattern");
  for (const auto& f : s.fibers)
    if (f.cell.arity != s.D.arity()) throw RegionError("stratum: fiber cell arity mismatch");
  strata_.push_back(std::move(s));
  return *this;
}

const Stratum* MonomialRegion::full() const {
  for (const auto& s : strata_)
    if (s.zeros.empty()) return &s;
  return nullptr;
}

void MonomialRegion::validate() const {
  for (size_t a = 0; a < strata_.size(); ++a)
    for (size_t b = a + 1; b < strata_.size(); ++b)
      if (strata_[a].zeros == strata_[b].zeros && !strata_[a].D.intersect(strata_[b].D).is_empty())
        throw RegionError("strata overlap");
  for (const auto& s : strata_) {
    int k = static_cast<int>(s.dim());
    PresburgerSet covered(s.D.arity());
    for (size_t i = 0; i < s.fibers.size(); ++i) {
      const auto& f = s.fibers[i];
      for (const auto& [g, p] : f.fiber.components())
        if (g != k) throw RegionError("fiber class has a component of grade " + std::to_string(g) + ", expected " + std::to_string(k));
      PresburgerSet piece = PresburgerSet::from_cell(f.cell).intersect(s.D);
      if (!covered.intersect(piece).is_empty()) throw RegionError("fiber pieces overlap");
      covered = covered.unite(piece);
    }
    if (auto w = s.D.minus(covered).find_point()) {
      std::ostringstream os;
      os << "fiber pieces do not cover the base, e.g. (";
      for (size_t i = 0; i < w->size(); ++i) os << (i ? ", " : "") << (*w)[i].get_str();
      os << ")";
      throw RegionError(os.str());
    }
    if (auto i = unbounded_below(s.D)) throw RegionError("base unbounded below in coordinate " + std::to_string(*i));
  }
}

bool MonomialRegion::has_concrete_fibers() const {
  for (const auto& s : strata_)
    for (const auto& f : s.fibers)
      if (!f.ac) return false;
  return true;
}

long ResidueMul::power_product(const std::vector<long>& a, const std::vector<Int>& e) const {
  long r = 1;
  Int order(q - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    long k = mod_floor(e[i], order).get_si();
    for (long b = a[i]; k > 0; k >>= 1, b = mul(b, b))
      if (k & 1) r = mul(r, b);
  }
  return r;
}

bool MonomialRegion::contains(const std::vector<std::optional<Int>>& val, const std::vector<long>& ac,
                              const ResidueMul* field) const {
  std::vector<size_t> zeros;
  for (size_t i = 0; i < n_; ++i)
    if (!val[i]) zeros.push_back(i);
  for (const auto& s : strata_) {
    if (s.zeros != zeros) continue;
    auto sup = s.support(n_);
    IntVec g;
    for (size_t i : sup) g.push_back(*val[i]);
    if (!s.D.contains(g)) continue;
    for (const auto& f : s.fibers) {
      if (!f.cell.contains(g)) continue;
      if (!f.ac) throw RegionError("fiber has no concrete realization");
      std::vector<long> a;
      for (size_t i : sup) a.push_back(ac[i]);
      if (f.ac_map) {
        if (!field) throw RegionError("fiber conditions need residue field arithmetic");
        std::vector<long> b;
        for (const auto& row : *f.ac_map) b.push_back(field->power_product(a, row));
        a = std::move(b);
      }
      for (size_t j = 0; j < sup.size(); ++j)
        if (!(*f.ac)[j].holds(a[j])) return false;
      return true;
    }
  }
  return false;
}

MonomialRegion MonomialRegion::unit_ball(size_t n) {
  MonomialRegion r(n);
  // full stratum first, then by growing zero patterns
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    Stratum s;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.zeros.push_back(i);
    size_t m = n - s.zeros.size();
    PCell c(m);
    for (size_t i = 0; i < m; ++i) c.add_ge(LinTerm::var(m, i));
    s.D = PresburgerSet::from_cell(c);
    s.fibers.push_back(FiberPiece::from_ac(c, std::vector<AcCond>(m)));
    r.add_stratum(std::move(s));
  }
  return r;
}

MonomialRegion MonomialRegion::torus_part(const PresburgerSet& D) {
  MonomialRegion r(D.arity());
  Stratum s;
  s.D = D;
  for (const auto& c : D.cells()) s.fibers.push_back(FiberPiece::from_ac(c, std::vector<AcCond>(D.arity())));
  r.add_stratum(std::move(s));
  return r;
}

MonomialRegion MonomialRegion::rv_preimage(const IntVec& gamma, const std::vector<long>& ac) {
  size_t n = gamma.size();
  if (ac.size() != n) throw RegionError("rv_preimage: arity mismatch");
  PCell c(n);
  std::vector<AcCond> conds;
  for (size_t i = 0; i < n; ++i) {
    c.add_eq(LinTerm::var(n, i) - LinTerm::constant_term(n, gamma[i]));
    if (ac[i] == 0) throw RegionError("rv_preimage: angular component must be nonzero");
    conds.push_back(AcCond::eq(ac[i]));
  }
  MonomialRegion r(n);
  r.add_stratum({{}, PresburgerSet::from_cell(c), {FiberPiece::from_ac(c, conds)}});
  return r;
}

MonomialRegion MonomialRegion::valuation_shell(const Int& gamma0) {
  PCell c(1);
  c.add_eq(LinTerm::var(1, 0) - LinTerm::constant_term(1, gamma0));
  MonomialRegion r(1);
  r.add_stratum({{}, PresburgerSet::from_cell(c), {FiberPiece::from_ac(c, {AcCond::any()})}});
  return r;
}

std::string MonomialRegion::str() const {
  std::ostringstream os;
  for (const auto& s : strata_) {
    os << "zeros [";
    for (size_t i = 0; i < s.zeros.size(); ++i) os << (i ? "," : "") << s.zeros[i];
    os << "] base " << s.D.str() << "\n";
    for (const auto& f : s.fibers) os << "  " << f.cell.str() << " : " << f.fiber.str() << "\n";
  }
  return os.str();
}

size_t ValWeight::num_t() const {
  size_t k = 0;
  for (const auto& [i, f] : kappa) k = std::max(k, i + 1);
  return k;
}

ValWeight ValWeight::trivial(size_t n) {
  ValWeight w;
  w.n = n;
  return w;
}

ValWeight ValWeight::monomial(size_t n, const std::vector<IntVec>& exps) {
  std::vector<Affine> fs;
  for (const auto& a : exps) {
    Affine f(n);
    for (size_t j = 0; j < n; ++j) f.coef[j] = Rat(a[j]);
    fs.push_back(f);
  }
  return from_affine(n, fs);
}

ValWeight ValWeight::from_affine(size_t n, const std::vector<Affine>& fs, const std::optional<Affine>& omega) {
  ValWeight w;
  w.n = n;
  SemilinearSet u = universe_q(n);
  auto as_map = [&](const Affine& f) { return QPiecewiseMap::affine(u, {f.coef}, {f.constant}); };
  for (size_t i = 0; i < fs.size(); ++i) w.kappa.emplace_back(i, as_map(fs[i]));
  if (omega) w.gamma_form = as_map(*omega);
  return w;
}

MonomialMap::MonomialMap(IntMat m, IntVec v) : M(std::move(m)), vc(std::move(v)) {
  size_t n = vc.size();
  if (M.size() != n) throw std::invalid_argument("monomial map: matrix size mismatch");
  for (const auto& row : M)
    if (row.size() != n) throw std::invalid_argument("monomial map: matrix size mismatch");
  Int d = determinant(M);
  if (d != 1 && d != -1) throw std::invalid_argument("non-unimodular matrix (det " + d.get_str() + ")");
}

IntVec MonomialMap::apply(const IntVec& gamma) const {
  IntVec r = mat_vec(M, gamma);
  for (size_t i = 0; i < r.size(); ++i) r[i] += vc[i];
  return r;
}

MonomialMap MonomialMap::inverse() const {
  IntMat inv = unimodular_inverse(M);
  IntVec w = mat_vec(inv, vc);
  for (auto& x : w) x = -x;
  return MonomialMap(inv, w);
}

bool MonomialMap::is_permutation() const {
  size_t n = arity();
  std::vector<int> col(n, 0);
  for (const auto& row : M) {
    int ones = 0;
    for (size_t j = 0; j < n; ++j) {
      if (row[j] == 1) {
        ++ones;
        ++col[j];
      } else if (row[j] != 0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return std::all_of(col.begin(), col.end(), [](int c) { return c == 1; });
}

Affine MonomialMap::jacobian_valuation() const {
  size_t n = arity();
  Affine a(n);
  for (size_t j = 0; j < n; ++j) {
    Int s = -1;
    for (size_t i = 0; i < n; ++i) s += M[i][j];
    a.coef[j] = Rat(s);
  }
  for (const auto& c : vc) a.constant += Rat(c);
  return a;
}

PresburgerSet lattice_points(const SemilinearSet& s) {
  std::vector<PCell> cells;
  for (const auto& c : s.cells()) {
    PresburgerSet p = presburger::to_set(c.formula(), s.arity());
    for (const auto& pc : p.cells()) cells.push_back(pc);
  }
  return PresburgerSet::from_disjoint(s.arity(), cells);
}

SemilinearSet universe_q(size_t n) { return semilinear::decompose(Formula::truth(true), n); }

std::optional<size_t> unbounded_below(const PresburgerSet& s) {
  size_t n = s.arity();
  for (const auto& c : s.cells()) {
    semilinear::QSystem rec(n);
    for (const auto& t : c.ineqs) {
      Affine a(n);
      for (size_t j = 0; j < n; ++j) a.coef[j] = Rat(t.coef[j]);
      rec.add(a, semilinear::CKind::GE);
    }
    for (size_t i = 0; i < n; ++i) {
      semilinear::QSystem sys = rec;
      Affine a(n);
      a.coef[i] = -1;
      a.constant = -1;
      sys.add(a, semilinear::CKind::GE);
      if (sys.feasible()) return i;
    }
  }
  return std::nullopt;
}

}  // namespace igusa::vfrag
