// Copyright (c) 2026 The igusa authors. Licensed under the MIT license.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "igusa/core/intmat.hpp"
#include "igusa/grothring/resclass.hpp"
#include "igusa/presburger/set.hpp"
#include "igusa/semilinear/piecewise.hpp"

namespace igusa::vfrag {

using presburger::PCell;
using presburger::PresburgerSet;
using semilinear::QPiecewiseMap;
using semilinear::SemilinearSet;

// Condition on the angular component of one nonzero coordinate.
// Any -> u, Eq(c) -> v, Ne(c) -> u - v.
struct AcCond {
  enum class Kind { Any, Eq, Ne };
  Kind kind = Kind::Any;
  long c = 1;
  static AcCond any() { return {}; }
  static AcCond eq(long c) { return {Kind::Eq, c}; }
  static AcCond ne(long c) { return {Kind::Ne, c}; }
  bool holds(long ac) const;
  bool operator==(const AcCond&) const = default;
};

// Residue fiber over the valuation vectors of `cell`. The optional ac list is a concrete
// product realization (one condition per nonzero coordinate) used by numeric oracles.
struct FiberPiece {
  PCell cell;
  grothring::ResClass fiber;
  std::optional<std::vector<AcCond>> ac;
  // Set after a monomial change of variables: `ac` constrains b_j = prod_i a_i^{ac_map[j][i]}
  // where a lists the angular components of the stratum's support coordinates.
  std::optional<IntMat> ac_map;

  static FiberPiece from_ac(const PCell& cell, const std::vector<AcCond>& ac);
  static FiberPiece symbolic(const PCell& cell, const grothring::ResClass& fiber);
};

grothring::ResClass ac_class(const std::vector<AcCond>& ac);

struct Stratum {
  std::vector<size_t> zeros;  // sorted coordinates forced to 0
  PresburgerSet D;            // over the valuations of the remaining coordinates, in order
  std::vector<FiberPiece> fibers;

  size_t dim() const { return D.arity(); }
  // Indices of the nonzero coordinates.
  std::vector<size_t> support(size_t n) const;
};

struct RegionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Multiplicative group of the residue field on codes 1..q-1.
struct ResidueMul {
  long q = 2;
  std::function<long(long, long)> mul;
  // prod_i a_i^{e_i}; negative exponents use the group order q - 1.
  long power_product(const std::vector<long>& a, const std::vector<Int>& e) const;
};

class MonomialRegion {
 public:
  MonomialRegion() = default;
  explicit MonomialRegion(size_t n) : n_(n) {}

  size_t arity() const { return n_; }
  const std::vector<Stratum>& strata() const { return strata_; }
  MonomialRegion& add_stratum(Stratum s);
  // The stratum without zero coordinates, if present.
  const Stratum* full() const;

  // Throws RegionError on overlapping fibers, uncovered points of D, bad grades,
  // overlapping strata or a base that is not bounded below.
  void validate() const;

  // Membership of a point given by valuations (nullopt = coordinate is 0) and angular
  // components. Needs concrete ac data on the matching fiber, and residue arithmetic when
  // that data sits behind an ac_map.
  bool contains(const std::vector<std::optional<Int>>& val, const std::vector<long>& ac,
                const ResidueMul* field = nullptr) const;
  bool has_concrete_fibers() const;

  // O^n with all zero strata.
  static MonomialRegion unit_ball(size_t n);
  // Full stratum only, one fiber u^n per cell of D.
  static MonomialRegion torus_part(const PresburgerSet& D);
  // rv^{-1}(t) for t with valuations gamma and angular components ac.
  static MonomialRegion rv_preimage(const IntVec& gamma, const std::vector<long>& ac);
  // {x : v(x) = gamma0} in dimension one.
  static MonomialRegion valuation_shell(const Int& gamma0);

  std::string str() const;

 private:
  size_t n_ = 0;
  std::vector<Stratum> strata_;
};

// Integrand q^{-rho sum_i kappa_i f_i} |dX| together with an optional Gamma volume form.
struct ValWeight {
  size_t n = 0;
  std::vector<std::pair<size_t, QPiecewiseMap>> kappa;  // (index of T, f)
  std::optional<QPiecewiseMap> gamma_form;

  size_t num_t() const;
  static ValWeight trivial(size_t n);
  // f_i(gamma) = a_i . gamma on all of Q^n.
  static ValWeight monomial(size_t n, const std::vector<IntVec>& exps);
  static ValWeight from_affine(size_t n, const std::vector<Affine>& fs, const std::optional<Affine>& omega = {});
};

// x -> c * x^M with valuation vector v(c); |det M| = 1.
struct MonomialMap {
  IntMat M;
  IntVec vc;

  MonomialMap(IntMat m, IntVec v);
  size_t arity() const { return vc.size(); }
  IntVec apply(const IntVec& gamma) const;
  MonomialMap inverse() const;
  bool is_permutation() const;
  // v(jcb F) as an affine form in the source valuations.
  Affine jacobian_valuation() const;
};

// Lattice points of a semilinear set.
PresburgerSet lattice_points(const SemilinearSet& s);
SemilinearSet universe_q(size_t n);
// Whether some coordinate is unbounded below on s (checked on recession cones).
std::optional<size_t> unbounded_below(const PresburgerSet& s);

}  // namespace igusa::vfrag
