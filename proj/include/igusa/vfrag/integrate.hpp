#pragma once

#include <vector>

#include "igusa/genfun/assemble.hpp"
#include "igusa/grothring/rvclass.hpp"
#include "igusa/vfrag/region.hpp"

namespace igusa::vfrag {

// MaximalIdeal: vol(maximal ideal) = 1, so vol(O) = q. Classical: vol(O) = 1.
enum class Normalization { MaximalIdeal, Classical };

struct WeightError : std::invalid_argument {
  std::optional<IntVec> witness;
  WeightError(const std::string& what, std::optional<IntVec> w = {}) : std::invalid_argument(what), witness(std::move(w)) {}
};

// Base set split so that every weight form is a single affine function on each part.
struct WeightedPart {
  PresburgerSet part;
  std::vector<Affine> forms;  // one per map, in the order given
};
std::vector<WeightedPart> refine_by_maps(const PresburgerSet& base, const std::vector<const QPiecewiseMap*>& maps);

// Summation data of the full stratum: count(q) * q^{-(sum gamma + omega)} * prod T_i^{f_i}.
// Lower-dimensional strata have measure zero and are left out.
std::vector<genfun::ZetaPiece> zeta_pieces(const MonomialRegion& A, const ValWeight& w, bool with_kappa = true);

grothring::RVClass integral_class(const MonomialRegion& A, const ValWeight& w);

genfun::RatFun volume_series(const MonomialRegion& A, const ValWeight& w, long rho = 1,
                             Normalization norm = Normalization::MaximalIdeal);
genfun::RatFun zeta(const MonomialRegion& A, const ValWeight& w, long rho = 1,
                    Normalization norm = Normalization::MaximalIdeal);

// Iterated integral with order[0] outermost. A shorter list E means: integrate the other
// coordinates over the fibers first, then E in the given order.
genfun::RatFun integrate_ordered(const MonomialRegion& A, const ValWeight& w, const std::vector<size_t>& order,
                                 long rho = 1);

genfun::FamilyReport zeta_family(const MonomialRegion& A, const ValWeight& w, const std::vector<long>& rho_list);

// Volume of the grade-n part of a class: point counts of the residue parts against
// q^{-omega} summed over the lattice points of the Gamma parts.
genfun::RatFun class_volume(const grothring::RVClass& c, size_t n);

// Integral values of the kappa forms on the lattice points of the full stratum.
void check_integrality(const MonomialRegion& A, const ValWeight& w);

}  // namespace igusa::vfrag
