#pragma once

#include <map>
#include <optional>
#include <string>

#include "igusa/core/number.hpp"
#include "igusa/genfun/laurent.hpp"

namespace igusa::grothring {

// Monomial in u = [T^1], v = [1]_1 and registered residue symbols; exponent per name.
using ResMono = std::map<std::string, int>;

// A residue variety symbol of a fixed grade with a point-count polynomial in q.
void register_symbol(const std::string& name, int grade, const genfun::LaurentPoly& count);
bool symbol_known(const std::string& name);
int symbol_grade(const std::string& name);
genfun::LaurentPoly symbol_count(const std::string& name);

class ResPoly {
 public:
  ResPoly() = default;
  static ResPoly constant(const Int& c);
  static ResPoly var(const std::string& name, int e = 1, const Int& c = 1);
  static ResPoly u() { return var("u"); }
  static ResPoly v() { return var("v"); }
  static ResPoly A() { return u() + v(); }

  const std::map<ResMono, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Weighted degree; nullopt for zero or non-homogeneous.
  std::optional<int> degree() const;
  bool has_negative() const;

  ResPoly operator+(const ResPoly& o) const;
  ResPoly operator-(const ResPoly& o) const;
  ResPoly operator-() const;
  ResPoly operator*(const ResPoly& o) const;
  ResPoly operator*(const Int& c) const;
  ResPoly pow(unsigned n) const;
  bool operator==(const ResPoly& o) const { return terms_ == o.terms_; }

  // v -> image
  ResPoly subst_v(const ResPoly& image) const;
  // Exact quotients, if divisible.
  std::optional<ResPoly> div_A() const;
  std::optional<ResPoly> div_v() const;

  genfun::LaurentPoly point_count() const;  // u -> q - 1, v -> 1
  Rat point_count(const Rat& q) const;
  std::string str() const;
  void add_term(const ResMono& m, const Int& c);

 private:
  std::map<ResMono, Int> terms_;
};

int mono_degree(const ResMono& m);

// Graded class: grade k -> homogeneous degree-k polynomial.
class ResClass {
 public:
  ResClass() = default;
  explicit ResClass(bool semiring) : semiring_(semiring) {}
  // Splits p into its homogeneous parts.
  static ResClass from_poly(const ResPoly& p, bool semiring = false);
  static ResClass one(bool semiring = false) { return from_poly(ResPoly::constant(1), semiring); }
  static ResClass u() { return from_poly(ResPoly::u()); }
  static ResClass v() { return from_poly(ResPoly::v()); }
  static ResClass A() { return from_poly(ResPoly::A()); }

  bool semiring() const { return semiring_; }
  const std::map<int, ResPoly>& components() const { return comps_; }
  ResPoly component(int k) const;
  bool is_zero() const { return comps_.empty(); }

  ResClass operator+(const ResClass& o) const;
  ResClass operator-(const ResClass& o) const;
  ResClass operator*(const ResClass& o) const;
  bool operator==(const ResClass& o) const { return comps_ == o.comps_; }

  genfun::LaurentPoly point_count() const;
  std::map<int, genfun::LaurentPoly> point_count_by_grade() const;
  Rat point_count(const Rat& q) const;
  std::string str() const;

 private:
  void check() const;
  bool semiring_ = false;
  std::map<int, ResPoly> comps_;
};

}  // namespace igusa::grothring
