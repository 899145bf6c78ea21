#include "igusa/semilinear/qlinear.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace igusa::semilinear {

QSystem& QSystem::add(const Affine& a, CKind k) {
  if (a.arity() > arity) throw std::invalid_argument("QSystem: arity mismatch");
  cs.push_back(QConstraint{a.extended(arity), k});
  return *this;
}

namespace {

// Scale so the first nonzero coefficient is +-1 (positive factor only for inequalities).
QConstraint scaled(const QConstraint& c) {
  QConstraint r = c;
  for (const auto& v : r.a.coef) {
    if (v == 0) continue;
    Rat f = 1 / abs(v);
    if (c.kind == CKind::EQ && v < 0) f = -f;
    r.a = r.a * f;
    break;
  }
  return r;
}

Affine drop(const Affine& a, size_t i) {
  Affine r = a;
  r.coef.erase(r.coef.begin() + static_cast<long>(i));
  return r;
}

}  // namespace

QSystem& QSystem::simplify() {
  std::vector<QConstraint> eqs;
  std::map<RatVec, std::pair<Rat, bool>> ineq;  // linear part -> (constant, strict), keep tightest
  for (const auto& c0 : cs) {
    if (c0.a.is_constant()) {
      const Rat& k = c0.a.constant;
      bool ok = c0.kind == CKind::GE ? k >= 0 : (c0.kind == CKind::GT ? k > 0 : k == 0);
      if (!ok) trivially_false = true;
      continue;
    }
    QConstraint c = scaled(c0);
    if (c.kind == CKind::EQ) {
      if (std::find(eqs.begin(), eqs.end(), c) == eqs.end()) eqs.push_back(c);
      continue;
    }
    bool strict = c.kind == CKind::GT;
    auto it = ineq.find(c.a.coef);
    if (it == ineq.end()) {
      ineq[c.a.coef] = {c.a.constant, strict};
    } else {
      auto& [k, s] = it->second;
      if (c.a.constant < k) {
        k = c.a.constant;
        s = strict;
      } else if (c.a.constant == k) {
        s = s || strict;
      }
    }
  }
  cs.clear();
  if (trivially_false) return *this;
  for (auto& e : eqs) cs.push_back(e);
  for (auto& [lin, ks] : ineq) {
    Affine a;
    a.coef = lin;
    a.constant = ks.first;
    // opposite pair check
    RatVec neg = lin;
    for (auto& v : neg) v = -v;
    auto it = ineq.find(neg);
    if (it != ineq.end()) {
      Rat sum = ks.first + it->second.first;
      if (sum < 0 || (sum == 0 && (ks.second || it->second.second))) {
        trivially_false = true;
        cs.clear();
        return *this;
      }
    }
    cs.push_back(QConstraint{a, ks.second ? CKind::GT : CKind::GE});
  }
  return *this;
}

QSystem QSystem::eliminate(size_t i) const {
  if (i >= arity) throw std::out_of_range("QSystem::eliminate");
  QSystem out(arity - 1);
  out.trivially_false = trivially_false;
  if (trivially_false) return out;
  // equality with a nonzero coefficient: substitute
  for (const auto& c : cs) {
    if (c.kind != CKind::EQ || c.a.coef[i] == 0) continue;
    // x_i = -(rest)/coef
    Affine rest = c.a;
    Rat coef = rest.coef[i];
    rest.coef[i] = 0;
    Affine sub = rest * Rat(-1 / coef);
    for (const auto& d : cs) {
      Affine e = d.a;
      Rat a = e.coef[i];
      e.coef[i] = 0;
      if (a != 0) e = e + sub * a;
      out.add(drop(e, i), d.kind);
    }
    out.simplify();
    return out;
  }
  std::vector<QConstraint> lower, upper;
  for (const auto& c : cs) {
    Rat a = c.a.coef[i];
    if (a == 0) out.add(drop(c.a, i), c.kind);
    else if (a > 0) lower.push_back(c);
    else upper.push_back(c);
  }
  for (const auto& l : lower)
    for (const auto& u : upper) {
      Rat al = l.a.coef[i], au = -u.a.coef[i];
      Affine comb = l.a * au + u.a * al;
      comb.coef[i] = 0;
      CKind k = (l.kind == CKind::GT || u.kind == CKind::GT) ? CKind::GT : CKind::GE;
      out.add(drop(comb, i), k);
    }
  out.simplify();
  return out;
}

bool QSystem::feasible() const {
  QSystem s = *this;
  s.simplify();
  while (s.arity > 0 && !s.trivially_false) s = s.eliminate(s.arity - 1);
  if (s.trivially_false) return false;
  s.simplify();
  return !s.trivially_false;
}

bool QSystem::satisfied_by(const RatVec& x) const {
  if (trivially_false) return false;
  for (const auto& c : cs) {
    Rat v = c.a.eval(x);
    if (c.kind == CKind::GE && v < 0) return false;
    if (c.kind == CKind::GT && v <= 0) return false;
    if (c.kind == CKind::EQ && v != 0) return false;
  }
  return true;
}

std::optional<QSystem::Bound> QSystem::infimum(const Affine& obj) const {
  // append z with z - obj == 0, eliminate the original variables
  QSystem s(arity + 1);
  s.trivially_false = trivially_false;
  for (const auto& c : cs) s.add(c.a.extended(arity + 1), c.kind);
  Affine link = Affine::var(arity + 1, arity) - obj.extended(arity + 1);
  s.add(link, CKind::EQ);
  s.simplify();
  for (size_t i = arity; i-- > 0;) {
    if (s.trivially_false) return std::nullopt;
    s = s.eliminate(i);
  }
  if (s.trivially_false) return std::nullopt;
  std::optional<Bound> best;
  for (const auto& c : s.cs) {
    Rat a = c.a.coef[0];
    if (c.kind == CKind::EQ) return Bound{-c.a.constant / a, true};
    if (a < 0) continue;
    Rat v = -c.a.constant / a;
    bool att = c.kind == CKind::GE;
    if (!best || v > best->value) best = Bound{v, att};
    else if (v == best->value) best->attained = best->attained && att;
  }
  return best;
}

std::optional<QSystem::Bound> QSystem::supremum(const Affine& obj) const {
  auto b = infimum(-obj);
  if (!b) return std::nullopt;
  return Bound{-b->value, b->attained};
}

std::optional<RatVec> QSystem::find_point() const {
  QSystem s = *this;
  s.simplify();
  if (s.trivially_false) return std::nullopt;
  // eliminate from the last variable down, keep the intermediate systems for back substitution
  std::vector<QSystem> stages{s};
  while (stages.back().arity > 0) {
    QSystem nxt = stages.back().eliminate(stages.back().arity - 1);
    if (nxt.trivially_false) return std::nullopt;
    stages.push_back(nxt);
  }
  if (stages.back().trivially_false) return std::nullopt;
  RatVec x;
  for (size_t lvl = stages.size() - 1; lvl-- > 0;) {
    const QSystem& st = stages[lvl];
    size_t i = st.arity - 1;
    std::optional<Rat> lo, hi, eq;
    for (const auto& c : st.cs) {
      Rat a = c.a.coef[i];
      Rat rest = c.a.constant;
      for (size_t j = 0; j < i; ++j) rest += c.a.coef[j] * x[j];
      if (a == 0) continue;
      Rat v = -rest / a;
      if (c.kind == CKind::EQ) {
        eq = v;
      } else if (a > 0) {
        if (!lo || v > *lo) lo = v;
      } else {
        if (!hi || v < *hi) hi = v;
      }
    }
    Rat val;
    if (eq) val = *eq;
    else if (lo && hi) val = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
    else if (lo) val = floor_rat(*lo) + 1;
    else if (hi) val = floor_rat(*hi) - 1;
    else val = 0;
    x.push_back(val);
  }
  if (!satisfied_by(x)) throw std::logic_error("QSystem::find_point: back substitution failed");
  return x;
}

}  // namespace igusa::semilinear
