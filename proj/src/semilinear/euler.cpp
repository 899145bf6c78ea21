#include "igusa/semilinear/euler.hpp"

#include <stdexcept>

namespace igusa::semilinear {

std::string GammaBarClass::str() const {
  if (a == 0 && b == 0) return "0";
  std::string s;
  if (a != 0) s = a.get_str();
  if (b != 0) {
    Int m = abs(b);
    std::string term = (m == 1 ? std::string() : m.get_str()) + "X";
    if (s.empty()) s = (b < 0 ? "-" : "") + term;
    else s += (b < 0 ? " - " : " + ") + term;
  }
  return s;
}

GammaBarClass cell_class(const QCell& c) {
  // a Section level counts 1, bounded band -1, one-sided band X, two-sided band 2X + 1
  GammaBarClass r{1, 0};
  for (const auto& l : c.levels) {
    if (l.kind == Level::Kind::Section) continue;
    int ends = (l.lo ? 1 : 0) + (l.hi ? 1 : 0);
    GammaBarClass f = ends == 2 ? GammaBarClass{-1, 0} : (ends == 1 ? GammaBarClass{0, 1} : GammaBarClass{1, 2});
    r = r * f;
  }
  return r;
}

EulerData euler(const SemilinearSet& s) {
  EulerData e;
  for (const auto& c : s.cells()) e.cls = e.cls + cell_class(c);
  e.chi_g = e.cls.chi_g();
  e.chi_b = e.cls.chi_b();
  return e;
}

std::optional<size_t> qdim(const SemilinearSet& s) {
  if (s.is_empty()) return std::nullopt;
  size_t d = 0;
  for (const auto& c : s.cells()) d = std::max(d, c.dim());
  return d;
}

Rat gamma_jacobian(const std::vector<std::optional<Rat>>& u, const std::vector<std::optional<Rat>>& v) {
  Rat r = 0;
  for (const auto& x : u) {
    if (!x) throw std::invalid_argument("gamma_jacobian: infinite coordinate");
    r -= *x;
  }
  for (const auto& x : v) {
    if (!x) throw std::invalid_argument("gamma_jacobian: infinite coordinate");
    r += *x;
  }
  return r;
}

Rat gamma_jacobian(const RatVec& u, const RatVec& v) {
  Rat r = 0;
  for (const auto& x : u) r -= x;
  for (const auto& x : v) r += x;
  return r;
}

bool StratifiedSet::contains(const std::vector<std::optional<Rat>>& x) const {
  if (x.size() != arity) throw std::invalid_argument("StratifiedSet::contains: arity mismatch");
  for (const auto& st : strata) {
    RatVec fin;
    bool match = true;
    for (size_t i = 0; i < arity && match; ++i) {
      if (st.infinite[i] != !x[i].has_value()) match = false;
      else if (x[i]) fin.push_back(*x[i]);
    }
    if (match && st.finite_part.contains(fin)) return true;
  }
  return false;
}

EulerData euler(const StratifiedSet& s) {
  EulerData e;
  for (const auto& st : s.strata) {
    EulerData d = euler(st.finite_part);
    e.chi_g += d.chi_g;
    e.chi_b += d.chi_b;
  }
  e.cls = GammaBarClass::from_chars(e.chi_g, e.chi_b);
  return e;
}

}  // namespace igusa::semilinear
