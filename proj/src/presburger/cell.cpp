#include "igusa/presburger/cell.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace igusa::presburger {

Congruence Congruence::from_term(const LinTerm& t, const Int& m) {
  Congruence c;
  c.coef = t.coef;
  c.r = -t.constant;
  c.m = m;
  return c;
}

PCell PCell::empty_cell(size_t n) {
  PCell c(n);
  c.infeasible = true;
  return c;
}

PCell& PCell::add_ge(const LinTerm& t) {
  if (t.arity() != arity) throw std::invalid_argument("PCell: arity mismatch");
  ineqs.push_back(t);
  return *this;
}

PCell& PCell::add_eq(const LinTerm& t) {
  add_ge(t);
  add_ge(-t);
  return *this;
}

PCell& PCell::add_cong(const LinTerm& t, const Int& m) {
  if (t.arity() != arity) throw std::invalid_argument("PCell: arity mismatch");
  if (m <= 0) throw std::invalid_argument("PCell: modulus must be positive");
  congs.push_back(Congruence::from_term(t, m));
  return *this;
}

PCell& PCell::normalize() {
  if (infeasible) {
    ineqs.clear();
    congs.clear();
    return *this;
  }
  // inequalities: tighten and keep the strongest per direction
  std::map<IntVec, Int> best;
  for (auto& t : ineqs) {
    if (t.is_constant()) {
      if (t.constant < 0) infeasible = true;
      continue;
    }
    Int g = gcd_of(t.coef);
    IntVec c = t.coef;
    for (auto& a : c) a /= g;
    Int k = floor_div(t.constant, g);
    auto it = best.find(c);
    if (it == best.end() || k < it->second) best[c] = k;
  }
  if (infeasible) return normalize();
  for (auto& [c, k] : best) {
    IntVec neg = c;
    for (auto& a : neg) a = -a;
    auto it = best.find(neg);
    if (it != best.end() && k + it->second < 0) {
      infeasible = true;
      return normalize();
    }
  }
  ineqs.clear();
  for (auto& [c, k] : best) ineqs.emplace_back(c, k);

  // congruences: reduce, divide out content, merge equal linear parts by CRT
  std::map<IntVec, std::pair<Int, Int>> cg;  // coef -> (r, m)
  for (auto& cc : congs) {
    if (cc.m <= 0) throw std::invalid_argument("congruence modulus must be positive");
    IntVec c = cc.coef;
    Int m = cc.m;
    for (auto& a : c) a = mod_floor(a, m);
    Int r = mod_floor(cc.r, m);
    Int g = gcd(gcd_of(c), m);
    if (mod_floor(r, g) != 0) {
      infeasible = true;
      return normalize();
    }
    for (auto& a : c) a /= g;
    m /= g;
    r /= g;
    if (m == 1) continue;
    for (auto& a : c) a = mod_floor(a, m);
    r = mod_floor(r, m);
    auto it = cg.find(c);
    if (it == cg.end()) {
      cg[c] = {r, m};
    } else {
      Int nr, nm;
      if (!crt(it->second.first, it->second.second, r, m, nr, nm)) {
        infeasible = true;
        return normalize();
      }
      it->second = {nr, nm};
    }
  }
  congs.clear();
  for (auto& [c, rm] : cg) congs.push_back(Congruence{c, rm.first, rm.second});
  return *this;
}

bool PCell::contains(const IntVec& x) const {
  if (x.size() != arity) throw std::invalid_argument("PCell::contains: arity mismatch");
  if (infeasible) return false;
  for (const auto& t : ineqs)
    if (t.eval(x) < 0) return false;
  for (const auto& c : congs)
    if (mod_floor(c.term().eval(x), c.m) != 0) return false;
  return true;
}

PCell PCell::intersect(const PCell& o) const {
  if (o.arity != arity) throw std::invalid_argument("PCell::intersect: arity mismatch");
  PCell r = *this;
  r.infeasible = infeasible || o.infeasible;
  r.ineqs.insert(r.ineqs.end(), o.ineqs.begin(), o.ineqs.end());
  r.congs.insert(r.congs.end(), o.congs.begin(), o.congs.end());
  r.normalize();
  return r;
}

bool PCell::mentions(size_t i) const {
  for (const auto& t : ineqs)
    if (t.coef[i] != 0) return true;
  for (const auto& c : congs)
    if (c.coef[i] != 0) return true;
  return false;
}

PCell PCell::drop_var(size_t i) const {
  if (mentions(i)) throw std::logic_error("PCell::drop_var: variable still occurs");
  PCell r(arity - 1);
  r.infeasible = infeasible;
  for (const auto& t : ineqs) r.ineqs.push_back(t.drop(i));
  for (const auto& c : congs) {
    Congruence d = c;
    d.coef.erase(d.coef.begin() + static_cast<long>(i));
    r.congs.push_back(d);
  }
  return r;
}

PCell PCell::insert_var(size_t i) const {
  PCell r(arity + 1);
  r.infeasible = infeasible;
  for (const auto& t : ineqs) r.ineqs.push_back(t.insert(i));
  for (const auto& c : congs) {
    Congruence d = c;
    d.coef.insert(d.coef.begin() + static_cast<long>(i), Int(0));
    r.congs.push_back(d);
  }
  return r;
}

namespace {

LinTerm compose(const LinTerm& t, const std::vector<LinTerm>& images, size_t n) {
  LinTerm r = LinTerm::constant_term(n, t.constant);
  for (size_t j = 0; j < t.coef.size(); ++j)
    if (t.coef[j] != 0) r += images[j] * t.coef[j];
  return r;
}

}  // namespace

PCell PCell::pullback(const std::vector<LinTerm>& images, size_t n) const {
  if (images.size() != arity) throw std::invalid_argument("PCell::pullback: arity mismatch");
  PCell r(n);
  r.infeasible = infeasible;
  for (const auto& t : ineqs) r.ineqs.push_back(compose(t, images, n));
  for (const auto& c : congs) r.congs.push_back(Congruence::from_term(compose(c.term(), images, n), c.m));
  r.normalize();
  return r;
}

std::vector<LinTerm> PCell::equalities() const {
  std::vector<LinTerm> out;
  for (size_t i = 0; i < ineqs.size(); ++i)
    for (size_t j = i + 1; j < ineqs.size(); ++j) {
      LinTerm s = ineqs[i] + ineqs[j];
      if (s.is_constant() && s.constant == 0) out.push_back(ineqs[i]);
    }
  return out;
}

std::string PCell::str(const std::vector<std::string>& names) const {
  if (infeasible) return "false";
  std::vector<std::string> parts;
  std::vector<bool> used(ineqs.size(), false);
  for (size_t i = 0; i < ineqs.size(); ++i) {
    if (used[i]) continue;
    for (size_t j = i + 1; j < ineqs.size(); ++j) {
      if (used[j]) continue;
      LinTerm s = ineqs[i] + ineqs[j];
      if (s.is_constant() && s.constant == 0) {
        used[i] = used[j] = true;
        LinTerm lhs = ineqs[i];
        Int k = lhs.constant;
        lhs.constant = 0;
        parts.push_back(lhs.str(names) + " == " + Int(-k).get_str());
        break;
      }
    }
    if (used[i]) continue;
    LinTerm lhs = ineqs[i];
    Int k = lhs.constant;
    lhs.constant = 0;
    parts.push_back(lhs.str(names) + " >= " + Int(-k).get_str());
  }
  for (const auto& c : congs) {
    LinTerm lhs(c.coef, 0);
    parts.push_back(lhs.str(names) + " == " + c.r.get_str() + " (mod " + c.m.get_str() + ")");
  }
  if (parts.empty()) return "true";
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? " and " : "") + parts[i];
  return s;
}

}  // namespace igusa::presburger
