#include "igusa/core/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace igusa {

Affine Affine::var(size_t n, size_t i) {
  Affine a(n);
  a.coef.at(i) = 1;
  return a;
}

Affine Affine::konst(size_t n, const Rat& c) {
  Affine a(n);
  a.constant = c;
  return a;
}

bool Affine::is_constant() const {
  for (const auto& c : coef)
    if (c != 0) return false;
  return true;
}

Rat Affine::eval(const RatVec& x) const {
  if (x.size() < coef.size()) throw std::invalid_argument("Affine::eval: arity mismatch");
  Rat s = constant;
  for (size_t i = 0; i < coef.size(); ++i) s += coef[i] * x[i];
  return s;
}

Affine Affine::operator+(const Affine& o) const {
  size_t n = std::max(coef.size(), o.coef.size());
  Affine r = extended(n);
  for (size_t i = 0; i < o.coef.size(); ++i) r.coef[i] += o.coef[i];
  r.constant += o.constant;
  return r;
}

Affine Affine::operator-(const Affine& o) const { return *this + (-o); }

Affine Affine::operator-() const { return *this * Rat(-1); }

Affine Affine::operator*(const Rat& k) const {
  Affine r = *this;
  for (auto& c : r.coef) c *= k;
  r.constant *= k;
  return r;
}

Affine Affine::extended(size_t n) const {
  Affine r = *this;
  if (r.coef.size() < n) r.coef.resize(n, Rat(0));
  return r;
}

std::string Affine::str(const std::vector<std::string>& names) const {
  std::string s;
  for (size_t i = 0; i < coef.size(); ++i) {
    const Rat& a = coef[i];
    if (a == 0) continue;
    std::string name = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    Rat b = abs(a);
    if (s.empty()) {
      if (a < 0) s += "-";
    } else {
      s += a < 0 ? " - " : " + ";
    }
    if (b != 1) s += to_str(b) + "*";
    s += name;
  }
  if (s.empty()) return to_str(constant);
  if (constant > 0) s += " + " + to_str(constant);
  if (constant < 0) s += " - " + to_str(Rat(-constant));
  return s;
}

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::GE: return ">=";
    case Rel::GT: return ">";
    case Rel::LE: return "<=";
    case Rel::LT: return "<";
    case Rel::EQ: return "==";
    case Rel::NE: return "!=";
    case Rel::CONG: return "==";
  }
  return "?";
}

Formula Formula::truth(bool v) {
  Formula f;
  f.kind = v ? Kind::True : Kind::False;
  return f;
}

Formula Formula::atom(const Affine& t, Rel r, const Int& m) {
  Formula f;
  f.kind = Kind::Atom;
  f.term = t;
  f.rel = r;
  f.modulus = m;
  if (r == Rel::CONG && m <= 0) throw std::invalid_argument("congruence modulus must be positive");
  return f;
}

Formula Formula::conj(std::vector<Formula> k) {
  if (k.size() == 1) return k[0];
  Formula f;
  f.kind = Kind::And;
  f.kids = std::move(k);
  return f;
}

Formula Formula::disj(std::vector<Formula> k) {
  if (k.size() == 1) return k[0];
  Formula f;
  f.kind = Kind::Or;
  f.kids = std::move(k);
  return f;
}

Formula Formula::neg(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.kids.push_back(std::move(g));
  return f;
}

Formula Formula::exists(std::string name, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.bound_name = std::move(name);
  f.kids.push_back(std::move(body));
  return f;
}

bool Formula::has_quantifier() const {
  if (kind == Kind::Exists) return true;
  for (const auto& k : kids)
    if (k.has_quantifier()) return true;
  return false;
}

bool Formula::has_congruence() const {
  if (kind == Kind::Atom && rel == Rel::CONG) return true;
  for (const auto& k : kids)
    if (k.has_congruence()) return true;
  return false;
}

bool Formula::eval(const RatVec& x) const {
  switch (kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      Rat v = term.eval(x);
      switch (rel) {
        case Rel::GE: return v >= 0;
        case Rel::GT: return v > 0;
        case Rel::LE: return v <= 0;
        case Rel::LT: return v < 0;
        case Rel::EQ: return v == 0;
        case Rel::NE: return v != 0;
        case Rel::CONG:
          if (!is_integer(v)) return false;
          return mod_floor(v.get_num(), modulus) == 0;
      }
      return false;
    }
    case Kind::And:
      for (const auto& k : kids)
        if (!k.eval(x)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : kids)
        if (k.eval(x)) return true;
      return false;
    case Kind::Not: return !kids[0].eval(x);
    case Kind::Exists: throw std::logic_error("Formula::eval: quantified formula");
  }
  return false;
}

std::string Formula::str(const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: {
      // move the constant to the right-hand side
      Affine lhs = term;
      Rat c = lhs.constant;
      lhs.constant = 0;
      if (lhs.is_constant()) return to_str(c) + " " + rel_str(rel) + " 0" +
                                    (rel == Rel::CONG ? " (mod " + modulus.get_str() + ")" : "");
      std::string s = lhs.str(names) + " " + rel_str(rel) + " " + to_str(Rat(-c));
      if (rel == Rel::CONG) s += " (mod " + modulus.get_str() + ")";
      return s;
    }
    case Kind::And:
    case Kind::Or: {
      std::string s = "(";
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) s += kind == Kind::And ? " and " : " or ";
        s += kids[i].str(names);
      }
      return s + ")";
    }
    case Kind::Not: return "not " + kids[0].str(names);
    case Kind::Exists: {
      auto inner = names;
      inner.push_back(bound_name);
      return "(exists " + bound_name + ". " + kids[0].str(inner) + ")";
    }
  }
  return "";
}

}  // namespace igusa
