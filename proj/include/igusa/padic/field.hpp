#pragma once

#include <optional>
#include <string>

#include "igusa/core/number.hpp"
#include "igusa/vfrag/region.hpp"

namespace igusa::padic {

// Q_p or F_{p^delta}((t)), worked modulo uniformizer^N.
struct LocalFieldConfig {
  enum class Kind { Qp, LaurentSeries };
  Kind kind = Kind::Qp;
  long p = 2;
  int delta = 1;
  int N = 1;

  static LocalFieldConfig qp(long p, int N) { return {Kind::Qp, p, 1, N}; }
  static LocalFieldConfig laurent(long p, int delta, int N) { return {Kind::LaurentSeries, p, delta, N}; }

  long q() const;
  // Throws std::invalid_argument unless p is prime, N >= 1 and delta == 1 for Q_p.
  void check() const;
  // Number of residues mod uniformizer^N, q^N.
  Int residues() const;
  std::string str() const;
};

// Valuation and angular component of the residue with index e in [0, q^N).
// Q_p: e is the integer itself. Laurent series: e lists the coefficients base q, and the
// angular component is the leading coefficient coded in [1, q).
struct Digits {
  std::optional<long> val;  // nullopt: e == 0 mod uniformizer^N
  long ac = 0;
};
Digits decode(const LocalFieldConfig& cfg, const Int& e);

// Residue field multiplication on angular component codes: mod p for Q_p; for F_{p^delta},
// codes are base-p coefficient vectors (constant term first) modulo a fixed irreducible polynomial.
vfrag::ResidueMul residue_mul(const LocalFieldConfig& cfg);

bool is_prime(long p);

}  // namespace igusa::padic
