#pragma once

#include <string>
#include <vector>

#include "igusa/core/number.hpp"

namespace igusa::presburger {

// Integer affine form  coef . x + constant.
struct LinTerm {
  IntVec coef;
  Int constant = 0;

  LinTerm() = default;
  explicit LinTerm(size_t n) : coef(n, Int(0)) {}
  LinTerm(IntVec c, Int k) : coef(std::move(c)), constant(std::move(k)) {}

  static LinTerm var(size_t n, size_t i, const Int& a = 1);
  static LinTerm constant_term(size_t n, const Int& k);

  size_t arity() const { return coef.size(); }
  bool is_constant() const;
  Int eval(const IntVec& x) const;

  LinTerm operator+(const LinTerm& o) const;
  LinTerm operator-(const LinTerm& o) const;
  LinTerm operator-() const;
  LinTerm operator*(const Int& k) const;
  LinTerm& operator+=(const LinTerm& o);
  bool operator==(const LinTerm& o) const = default;
  auto operator<=>(const LinTerm& o) const = default;

  // Remove variable i.
  LinTerm drop(size_t i) const;
  // Insert a zero coefficient at position i.
  LinTerm insert(size_t i) const;
  // Replace x_i by the affine form s (s has the same arity; coef of x_i in s must be 0).
  LinTerm substitute(size_t i, const LinTerm& s) const;

  std::string str(const std::vector<std::string>& names = {}) const;
};

std::vector<std::string> default_names(size_t n);

}  // namespace igusa::presburger
