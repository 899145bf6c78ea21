#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/presburger/linterm.hpp"

namespace igusa::presburger {

// coef . x == r (mod m), with m >= 2 and 0 <= r < m once normalized.
struct Congruence {
  IntVec coef;
  Int r = 0;
  Int m = 1;
  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence&) const = default;
  // The affine form  coef . x - r, which must vanish mod m.
  LinTerm term() const { return LinTerm(coef, -r); }
  static Congruence from_term(const LinTerm& t, const Int& m);
};

// Conjunction of inequalities (t >= 0) and congruences over Z^arity.
struct PCell {
  size_t arity = 0;
  std::vector<LinTerm> ineqs;
  std::vector<Congruence> congs;
  bool infeasible = false;

  PCell() = default;
  explicit PCell(size_t n) : arity(n) {}
  static PCell empty_cell(size_t n);

  PCell& add_ge(const LinTerm& t);  // t >= 0
  PCell& add_eq(const LinTerm& t);  // t == 0
  PCell& add_cong(const LinTerm& t, const Int& m);  // t == 0 (mod m)
  PCell& add_cong(const Congruence& c) { congs.push_back(c); return *this; }

  // Canonical form; sets infeasible when a contradiction is visible syntactically.
  PCell& normalize();
  PCell normalized() const { PCell c = *this; c.normalize(); return c; }

  bool contains(const IntVec& x) const;
  PCell intersect(const PCell& o) const;
  // Remove a variable that does not occur; insert a fresh free variable at i.
  PCell drop_var(size_t i) const;
  PCell insert_var(size_t i) const;
  // Map variables: new cell in arity `n`, variable j of this cell becomes affine form images[j].
  PCell pullback(const std::vector<LinTerm>& images, size_t n) const;

  bool is_universe() const { return !infeasible && ineqs.empty() && congs.empty(); }
  bool mentions(size_t i) const;
  // Equalities visible as opposite inequality pairs.
  std::vector<LinTerm> equalities() const;

  std::string str(const std::vector<std::string>& names = {}) const;
  bool operator==(const PCell& o) const = default;
};

// Decision procedures on one cell.
std::optional<IntVec> find_point(const PCell& c);
bool cell_is_empty(const PCell& c);
// Drop constraints implied by the others (same integer points).
PCell remove_redundant(const PCell& c);

// Cooper elimination of variable k: pairwise disjoint cells of arity-1 whose union is the projection.
std::vector<PCell> eliminate_var(const PCell& c, size_t k);

}  // namespace igusa::presburger
