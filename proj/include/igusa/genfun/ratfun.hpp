// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "igusa/genfun/laurent.hpp"

namespace igusa::genfun {

// Raised by evaluate when a denominator factor vanishes.
struct PoleHit : std::runtime_error {
  Exps factor;  // the factor is 1 - z^factor
  explicit PoleHit(Exps f);
};

// num / prod (1 - z^e)^mult over a fixed variable list q, T1..Tk.
class RatFun {
 public:
  RatFun() : num_(1) {}
  explicit RatFun(LaurentPoly num) : num_(std::move(num)) {}
  static RatFun zero(size_t nvars) { return RatFun(LaurentPoly(nvars)); }
  static RatFun one(size_t nvars) { return RatFun(LaurentPoly::constant(nvars, 1)); }
  static RatFun constant(size_t nvars, const Rat& c) { return RatFun(LaurentPoly::constant(nvars, c)); }
  static RatFun monomial(const Exps& e, const Rat& c = 1) { return RatFun(LaurentPoly::monomial(e, c)); }
  // 1 / (1 - z^e)^mult
  static RatFun geometric(const Exps& e, int mult = 1);

  size_t nvars() const { return num_.nvars(); }
  size_t num_t() const { return num_.num_t(); }
  const LaurentPoly& numerator() const { return num_; }
  const std::map<Exps, int>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun padded(size_t nvars) const;

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator-() const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator*(const Rat& c) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun times_monomial(const Exps& e) const;

  // Equality as rational functions.
  bool equals(const RatFun& o) const;
  bool operator==(const RatFun& o) const { return equals(o); }

  RatFun substitute_power(long c) const;
  Rat evaluate(const Rat& q, const RatVec& t) const;

  // Orient factors, cancel what divides the numerator, merge related factors.
  RatFun canonical() const;
  std::string str() const;
  // Denominator expanded as a Laurent polynomial.
  LaurentPoly expanded_denominator() const;

  // Multiply in a factor (1 - z^e)^-mult; e is oriented on the way in.
  void add_pole(const Exps& e, int mult = 1);

 private:
  LaurentPoly num_;
  std::map<Exps, int> den_;
};

// 1 - z^e as a Laurent polynomial
LaurentPoly one_minus(const Exps& e);
// True if z^e is small: q-exponent <= 0, T exponents >= 0, not all zero.
bool is_small(const Exps& e);
// Exact division of p by 1 - z^e, if it divides.
std::optional<LaurentPoly> divide_one_minus(const LaurentPoly& p, const Exps& e);

}  // namespace igusa::genfun
