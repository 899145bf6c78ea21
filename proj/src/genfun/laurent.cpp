#include "igusa/genfun/laurent.hpp"

#include <stdexcept>

namespace igusa::genfun {

LaurentPoly LaurentPoly::constant(size_t nvars, const Rat& c) {
  LaurentPoly p(nvars);
  p.add_term(Exps(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exps& e, const Rat& c) {
  LaurentPoly p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::q_power(size_t nvars, long e, const Rat& c) {
  Exps x(nvars, 0);
  x[0] = e;
  return monomial(x, c);
}

bool LaurentPoly::is_constant() const {
  for (const auto& [e, c] : terms_)
    for (long v : e)
      if (v != 0) return false;
  return true;
}

Rat LaurentPoly::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void LaurentPoly::add_term(const Exps& e, const Rat& c) {
  if (c == 0) return;
  if (e.size() != nvars_) throw std::invalid_argument("LaurentPoly: exponent width mismatch");
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::padded(size_t nvars) const {
  if (nvars <= nvars_) return *this;
  LaurentPoly p(nvars);
  for (const auto& [e, c] : terms_) {
    Exps x = e;
    x.resize(nvars, 0);
    p.terms_.emplace(std::move(x), c);
  }
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.nvars_ > nvars_) *this = padded(o.nvars_);
  if (o.nvars_ < nvars_) return *this += o.padded(nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const Rat& k) const {
  if (k == 0) return LaurentPoly(nvars_);
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c *= k;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  size_t n = std::max(nvars_, o.nvars_);
  LaurentPoly a = padded(n), b = o.padded(n), r(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exps e(n);
      for (size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exps& s) const {
  size_t n = std::max(nvars_, s.size());
  LaurentPoly a = padded(n), r(n);
  for (const auto& [e, c] : a.terms_) {
    Exps x = e;
    for (size_t i = 0; i < s.size(); ++i) x[i] += s[i];
    r.terms_.emplace(std::move(x), c);
  }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r = constant(nvars_, 1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  size_t n = std::max(nvars_, o.nvars_);
  return padded(n).terms_ == o.padded(n).terms_;
}

LaurentPoly LaurentPoly::substitute_power(long k) const {
  if (k == 0) throw std::invalid_argument("substitute_power: zero power");
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exps x = e;
    for (long& v : x) v *= k;
    r.add_term(x, c);
  }
  return r;
}

Rat eval_monomial(const Exps& e, const Rat& q, const RatVec& t) {
  Rat v = pow_rat(q, e[0]);
  for (size_t i = 1; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (i - 1 >= t.size()) throw std::invalid_argument("evaluate: missing value for T" + std::to_string(i));
    v *= pow_rat(t[i - 1], e[i]);
  }
  return v;
}

Rat LaurentPoly::evaluate(const Rat& q, const RatVec& t) const {
  Rat s = 0;
  for (const auto& [e, c] : terms_) s += c * eval_monomial(e, q, t);
  return s;
}

std::string monomial_str(const Exps& e) {
  std::string s;
  auto put = [&](const std::string& name, long v) {
    if (v == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (v != 1) s += "^" + std::to_string(v);
  };
  put("q", e[0]);
  for (size_t i = 1; i < e.size(); ++i) put("T" + std::to_string(i), e[i]);
  return s;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string m = monomial_str(e);
    Rat a = abs(c);
    std::string body;
    if (m.empty()) body = to_str(a);
    else if (a == 1) body = m;
    else body = to_str(a) + "*" + m;
    if (s.empty()) s = (c < 0 ? "-" : "") + body;
    else s += (c < 0 ? "-" : "+") + body;
  }
  return s;
}

}  // namespace igusa::genfun
