#pragma once

#include "igusa/semilinear/piecewise.hpp"
#include "igusa/vfrag/region.hpp"

namespace igusa::vfrag {

// y -> f(G y + g0), pieces re-decomposed in the new coordinates.
QPiecewiseMap compose_affine(const QPiecewiseMap& f, const QMat& G, const RatVec& g0);

struct Pushforward {
  MonomialRegion region;
  ValWeight weight;
};

// Pushforward along x -> c * x^M. The Gamma volume form absorbs v(jcb) of the inverse, so
// zeta(A, w) == zeta(result). Strata with zero coordinates are carried along only for
// permutation matrices; for other maps they are dropped (they have measure zero).
// Throws std::invalid_argument("range violation ...") if the new base is unbounded below.
Pushforward change_of_variables(const MonomialRegion& A, const ValWeight& w, const MonomialMap& m);

struct MeasureCarrier {
  MonomialRegion region;
  std::optional<QPiecewiseMap> omega;  // missing means 0
};

// omega(x) == omega'(F x) + v(jcb F)(x) on the full stratum of src. Throws
// std::invalid_argument("carrier mismatch ...") unless F maps the base of src onto that of dst.
semilinear::Verdict check_measure_preserving(const MonomialMap& F, const MeasureCarrier& src,
                                             const MeasureCarrier& dst);

}  // namespace igusa::vfrag
