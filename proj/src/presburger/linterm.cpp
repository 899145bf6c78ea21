#include "igusa/presburger/linterm.hpp"

#include <stdexcept>

namespace igusa::presburger {

LinTerm LinTerm::var(size_t n, size_t i, const Int& a) {
  LinTerm t(n);
  t.coef.at(i) = a;
  return t;
}

LinTerm LinTerm::constant_term(size_t n, const Int& k) {
  LinTerm t(n);
  t.constant = k;
  return t;
}

bool LinTerm::is_constant() const {
  for (const auto& a : coef)
    if (a != 0) return false;
  return true;
}

Int LinTerm::eval(const IntVec& x) const {
  if (x.size() != coef.size()) throw std::invalid_argument("LinTerm::eval: arity mismatch");
  Int s = constant;
  for (size_t i = 0; i < coef.size(); ++i) s += coef[i] * x[i];
  return s;
}

LinTerm LinTerm::operator+(const LinTerm& o) const {
  LinTerm r = *this;
  r += o;
  return r;
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  if (o.coef.size() != coef.size()) throw std::invalid_argument("LinTerm: arity mismatch");
  for (size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
  constant += o.constant;
  return *this;
}

LinTerm LinTerm::operator-(const LinTerm& o) const { return *this + (-o); }

LinTerm LinTerm::operator-() const {
  LinTerm r = *this;
  for (auto& a : r.coef) a = -a;
  r.constant = -r.constant;
  return r;
}

LinTerm LinTerm::operator*(const Int& k) const {
  LinTerm r = *this;
  for (auto& a : r.coef) a *= k;
  r.constant *= k;
  return r;
}

LinTerm LinTerm::drop(size_t i) const {
  LinTerm r = *this;
  r.coef.erase(r.coef.begin() + static_cast<long>(i));
  return r;
}

LinTerm LinTerm::insert(size_t i) const {
  LinTerm r = *this;
  r.coef.insert(r.coef.begin() + static_cast<long>(i), Int(0));
  return r;
}

LinTerm LinTerm::substitute(size_t i, const LinTerm& s) const {
  Int a = coef.at(i);
  LinTerm r = *this;
  r.coef[i] = 0;
  if (a != 0) r += s * a;
  return r;
}

std::vector<std::string> default_names(size_t n) {
  std::vector<std::string> v;
  for (size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
  return v;
}

std::string LinTerm::str(const std::vector<std::string>& names0) const {
  auto names = names0.size() >= coef.size() ? names0 : default_names(coef.size());
  std::string s;
  for (size_t i = 0; i < coef.size(); ++i) {
    const Int& a = coef[i];
    if (a == 0) continue;
    if (s.empty()) {
      if (a == -1) s += "-";
      else if (a != 1) s += a.get_str() + "*";
    } else {
      s += a < 0 ? " - " : " + ";
      Int b = abs(a);
      if (b != 1) s += b.get_str() + "*";
    }
    s += names[i];
  }
  if (s.empty()) return constant.get_str();
  if (constant > 0) s += " + " + constant.get_str();
  if (constant < 0) s += " - " + Int(-constant).get_str();
  return s;
}

}  // namespace igusa::presburger
