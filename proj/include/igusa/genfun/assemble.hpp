#pragma once

#include <map>
#include <string>
#include <vector>

#include "igusa/genfun/summation.hpp"

namespace igusa::genfun {

// count(q) * sum over delta of the exponent data.
struct ZetaPiece {
  LaurentPoly count;
  presburger::PresburgerSet delta;
  ExponentData e;
};

struct AssembleStats {
  size_t mu = 0;  // nonempty residue summands used
  size_t nu = 0;  // summation dimension
};

// Exponent data after gamma -> rho*gamma: linear parts kept, constants times rho.
ExponentData scale_exponents(const ExponentData& e, long rho);

// Residue classes d in [0, rho)^n of the dilated set, in lexicographic order of d.
std::vector<std::pair<IntVec, presburger::PresburgerSet>> split_rho(const presburger::PresburgerSet& s, long rho);

RatFun zeta_assemble(const std::vector<ZetaPiece>& pieces, long rho, AssembleStats* stats = nullptr);

// R_{m,d} for residue d primitive mod m: sum of the residue summand at level m.
struct FamilyFunction {
  long m = 1;
  size_t piece = 0;
  IntVec residue;
  RatFun R;
};

struct FamilySummand {
  long m = 1;
  size_t index = 0;  // into FamilyReport::functions
  long power = 1;    // rho / m, the substitution exponent
};

struct FamilyRho {
  long rho = 1;
  std::vector<FamilySummand> summands;
  RatFun direct;       // zeta_assemble(pieces, rho)
  RatFun recomposed;   // sum of count * R_{m,d}(q^{rho/m}, T^{rho/m})
  bool reproduces = false;
};

struct ScalingCheck {
  long rho = 1, rho2 = 1;
  size_t piece = 0;
  IntVec residue;  // d at rho
  bool ok = false;
};

struct FamilyReport {
  std::vector<FamilyFunction> functions;
  std::vector<FamilyRho> per_rho;
  std::vector<ScalingCheck> checks;
  bool certified() const;
  std::string str() const;
};

FamilyReport uniform_family(const std::vector<ZetaPiece>& pieces, const std::vector<long>& rho_list);

}  // namespace igusa::genfun
