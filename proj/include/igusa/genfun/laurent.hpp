#pragma once

#include <map>
#include <string>
#include <vector>

#include "igusa/core/number.hpp"

namespace igusa::genfun {

// Exponent vector over (q, T1, ..., Tk).
using Exps = std::vector<long>;

// Laurent polynomial in q, T1..Tk with rational coefficients.
class LaurentPoly {
 public:
  LaurentPoly() : nvars_(1) {}
  explicit LaurentPoly(size_t nvars) : nvars_(nvars) {}
  static LaurentPoly constant(size_t nvars, const Rat& c);
  static LaurentPoly monomial(const Exps& e, const Rat& c = 1);
  // q - 1 style helpers
  static LaurentPoly q_power(size_t nvars, long e, const Rat& c = 1);

  size_t nvars() const { return nvars_; }
  size_t num_t() const { return nvars_ - 1; }
  const std::map<Exps, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat coeff(const Exps& e) const;

  // Extend with extra T variables (no-op if already wide enough).
  LaurentPoly padded(size_t nvars) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Rat& c) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly shifted(const Exps& e) const;  // times z^e
  LaurentPoly pow(unsigned n) const;
  bool operator==(const LaurentPoly& o) const;

  // q -> q^c, Ti -> Ti^c
  LaurentPoly substitute_power(long c) const;
  Rat evaluate(const Rat& q, const RatVec& t) const;

  // e.g. "q-1", "2*q^-1*T1^2+1/2"; terms by descending exponent.
  std::string str() const;

  void add_term(const Exps& e, const Rat& c);

 private:
  size_t nvars_;
  std::map<Exps, Rat> terms_;
};

std::string monomial_str(const Exps& e);
Rat eval_monomial(const Exps& e, const Rat& q, const RatVec& t);

}  // namespace igusa::genfun
