#pragma once

#include <memory>
#include <string>
#include <vector>

#include "igusa/core/number.hpp"

namespace igusa {

// Affine form over variables 0..n-1 with rational coefficients.
struct Affine {
  RatVec coef;
  Rat constant = 0;

  Affine() = default;
  explicit Affine(size_t n) : coef(n, Rat(0)) {}
  static Affine var(size_t n, size_t i);
  static Affine konst(size_t n, const Rat& c);

  size_t arity() const { return coef.size(); }
  bool is_constant() const;
  Rat eval(const RatVec& x) const;
  Affine operator+(const Affine& o) const;
  Affine operator-(const Affine& o) const;
  Affine operator-() const;
  Affine operator*(const Rat& k) const;
  Affine extended(size_t n) const;  // pad with zero coefficients
  bool operator==(const Affine&) const = default;
  std::string str(const std::vector<std::string>& names) const;
};

enum class Rel { GE, GT, LE, LT, EQ, NE, CONG };

// Boolean combination of affine atoms; `exists` binds one fresh variable appended at index arity.
struct Formula {
  enum class Kind { True, False, Atom, And, Or, Not, Exists };
  Kind kind = Kind::True;
  Rel rel = Rel::GE;
  Affine term;      // atom:  term  rel  0
  Int modulus = 0;  // CONG: term == 0 (mod modulus)
  std::vector<Formula> kids;
  std::string bound_name;  // Exists

  static Formula truth(bool v);
  static Formula atom(const Affine& t, Rel r, const Int& m = 0);
  static Formula conj(std::vector<Formula> k);
  static Formula disj(std::vector<Formula> k);
  static Formula neg(Formula f);
  static Formula exists(std::string name, Formula body);

  bool has_quantifier() const;
  bool has_congruence() const;
  // Truth at a rational point (quantifier-free only).
  bool eval(const RatVec& x) const;
  std::string str(const std::vector<std::string>& names) const;
  bool operator==(const Formula&) const = default;
};

std::string rel_str(Rel r);

}  // namespace igusa
