#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/semilinear/qcell.hpp"

namespace igusa::semilinear {

// a + bX in Z[X]/(X^2 + X).
struct GammaBarClass {
  Int a = 0, b = 0;

  static GammaBarClass from_chars(const Int& chi_g, const Int& chi_b) { return {chi_b, chi_b - chi_g}; }
  Int chi_b() const { return a; }         // X -> 0
  Int chi_g() const { return a - b; }     // X -> -1
  GammaBarClass operator+(const GammaBarClass& o) const { return {a + o.a, b + o.b}; }
  GammaBarClass operator-(const GammaBarClass& o) const { return {a - o.a, b - o.b}; }
  GammaBarClass operator-() const { return {-a, -b}; }
  GammaBarClass operator*(const GammaBarClass& o) const { return {a * o.a, a * o.b + b * o.a - b * o.b}; }
  bool operator==(const GammaBarClass&) const = default;
  std::string str() const;
};

struct EulerData {
  Int chi_g = 0, chi_b = 0;
  GammaBarClass cls;
};

// Class of one cell: product of its band factors.
GammaBarClass cell_class(const QCell& c);
EulerData euler(const SemilinearSet& s);
// Max cell dimension; nullopt for the empty set.
std::optional<size_t> qdim(const SemilinearSet& s);

// -sum(u) + sum(v); nullopt entries stand for infinity and are rejected.
Rat gamma_jacobian(const std::vector<std::optional<Rat>>& u, const std::vector<std::optional<Rat>>& v);
Rat gamma_jacobian(const RatVec& u, const RatVec& v);

// Subset of Gamma_oo^n split by which coordinates are infinite; each stratum lives in the
// finite coordinates only.
struct InfStratum {
  std::vector<bool> infinite;
  SemilinearSet finite_part;
};
struct StratifiedSet {
  size_t arity = 0;
  std::vector<InfStratum> strata;
  bool contains(const std::vector<std::optional<Rat>>& x) const;
};
EulerData euler(const StratifiedSet& s);

}  // namespace igusa::semilinear
