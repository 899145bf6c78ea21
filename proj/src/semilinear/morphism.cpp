#include <functional>
#include <stdexcept>

#include "igusa/semilinear/piecewise.hpp"

namespace igusa::semilinear {

namespace {

QSystem joined(const QSystem& a, const QSystem& b) {
  QSystem s = a;
  for (const auto& c : b.cs) s.cs.push_back(c);
  s.trivially_false = a.trivially_false || b.trivially_false;
  return s;
}

// Constraints of s on y, rewritten for x with y = piece(x).
QSystem pullback(const QSystem& s, const QPiece& p, size_t n) {
  QSystem r(n);
  r.trivially_false = s.trivially_false;
  for (const auto& c : s.cs) {
    Affine t = Affine::konst(n, c.a.constant);
    for (size_t j = 0; j < c.a.arity(); ++j)
      if (c.a.coef[j] != 0) t = t + p.component(j).extended(n) * c.a.coef[j];
    r.add(t, c.kind);
  }
  return r;
}

Affine component_sum(const QPiece& p, size_t n) {
  Affine s = Affine::konst(n, 0);
  for (size_t j = 0; j < p.matrix.size(); ++j) s = s + p.component(j).extended(n);
  return s;
}

// sum of components of q after y = F(x)
Affine composed_sum(const QPiece& q, const QPiece& F, size_t n) {
  Affine s = Affine::konst(n, 0);
  Affine inner = component_sum(q, q.domain.arity);
  s.constant = inner.constant;
  for (size_t j = 0; j < inner.arity(); ++j)
    if (inner.coef[j] != 0) s = s + F.component(j).extended(n) * inner.coef[j];
  return s;
}

}  // namespace

Verdict check_bijection(const QPiecewiseMap& F, const SemilinearSet& src, const SemilinearSet& dst) {
  if (F.in != src.arity() || F.out != dst.arity()) throw std::invalid_argument("check_bijection: arity mismatch");
  if (auto gap = src.minus(F.domain()); !gap.is_empty())
    throw std::invalid_argument("F not defined on all of src (e.g. at " + gap.cells()[0].str() + ")");
  size_t n = src.arity();
  std::vector<QCell> cov;
  for (const auto& c : src.cells())
    for (const auto& p : F.pieces) {
      QSystem s = joined(c.system(), p.domain.system());
      if (!s.feasible()) continue;
      SemilinearSet region = decompose(system_formula(s), n);
      for (const auto& r : region.cells()) {
        RatVec base;
        QMat dirs;
        r.hull(base, dirs);
        size_t d = r.dim();
        if (d > 0 && qrank(qmul(p.matrix, dirs), d) < d)
          return {false, "F is not injective on a piece", r.sample};
        SemilinearSet im = SemilinearSet::from_cells(n, {r}).image(p.matrix, p.offset);
        SemilinearSet overlap = im.intersect(SemilinearSet::from_cells(F.out, cov));
        if (!overlap.is_empty()) return {false, "images of two pieces overlap", overlap.cells()[0].sample};
        cov.insert(cov.end(), im.cells().begin(), im.cells().end());
      }
    }
  SemilinearSet covered = SemilinearSet::from_cells(F.out, cov);
  if (auto miss = dst.minus(covered); !miss.is_empty())
    return {false, "F is not surjective onto dst", miss.cells()[0].sample};
  if (auto out = covered.minus(dst); !out.is_empty())
    return {false, "F maps outside dst", out.cells()[0].sample};
  return {};
}

Verdict check_identity(const QPiecewiseMap& F, const SemilinearSet& src, const std::vector<const QPiecewiseMap*>& lhs,
                       const std::vector<const QPiecewiseMap*>& rhs_after_F,
                       const std::vector<const QPiecewiseMap*>& extra_rhs) {
  size_t n = src.arity();
  for (const auto* m : lhs)
    if (!src.minus(m->domain()).is_empty()) throw std::invalid_argument("check_identity: map undefined on part of src");
  for (const auto* m : extra_rhs)
    if (!src.minus(m->domain()).is_empty()) throw std::invalid_argument("check_identity: map undefined on part of src");
  Verdict bad;
  bad.ok = true;
  // depth-first over all piece combinations with feasibility pruning
  std::vector<const QPiecewiseMap*> direct = lhs;
  direct.insert(direct.end(), extra_rhs.begin(), extra_rhs.end());
  std::function<bool(const QSystem&, const QPiece&, size_t, size_t, Affine)> walk =
      [&](const QSystem& s, const QPiece& fp, size_t i, size_t j, Affine diff) -> bool {
    if (i < direct.size()) {
      bool is_lhs = i < lhs.size();
      for (const auto& p : direct[i]->pieces) {
        QSystem t = joined(s, p.domain.system());
        if (!t.feasible()) continue;
        Affine d = component_sum(p, n);
        if (!walk(t, fp, i + 1, j, is_lhs ? diff + d : diff - d)) return false;
      }
      return true;
    }
    if (j < rhs_after_F.size()) {
      for (const auto& p : rhs_after_F[j]->pieces) {
        QSystem t = joined(s, pullback(p.domain.system(), fp, n));
        if (!t.feasible()) continue;
        if (!walk(t, fp, i, j + 1, diff - composed_sum(p, fp, n))) return false;
      }
      return true;
    }
    for (const Affine& side : {diff, -diff}) {
      QSystem t = s;
      t.add(side, CKind::GT);
      if (auto w = t.find_point()) {
        bad = {false, "identity fails: lhs - rhs = " + to_str(diff.eval(*w)) + " at witness", *w};
        return false;
      }
    }
    return true;
  };
  for (const auto& c : src.cells())
    for (const auto& fp : F.pieces) {
      QSystem s = joined(c.system(), fp.domain.system());
      if (!s.feasible()) continue;
      // every point must be covered by some piece of each map after F
      for (const auto* m : rhs_after_F) {
        SemilinearSet region = decompose(system_formula(s), n);
        SemilinearSet img = region.image(fp.matrix, fp.offset);
        if (auto gap = img.minus(m->domain()); !gap.is_empty())
          return {false, "map on dst undefined at F(x)", gap.cells()[0].sample};
      }
      if (!walk(s, fp, 0, 0, Affine::konst(n, 0))) return bad;
    }
  return {};
}

Verdict check_mG_morphism(const QPiecewiseMap& F, const GammaObject& src, const GammaObject& dst) {
  Verdict v = check_bijection(F, src.carrier, dst.carrier);
  if (!v.ok) return v;
  return check_identity(F, src.carrier, {&src.f, &src.omega}, {&dst.f, &dst.omega}, {});
}

}  // namespace igusa::semilinear
