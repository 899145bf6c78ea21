#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/semilinear/qcell.hpp"

namespace igusa::semilinear {

struct QPiece {
  QCell domain;
  QMat matrix;  // out x in
  RatVec offset;
  RatVec apply(const RatVec& x) const;
  // Component j as an affine form over the input.
  Affine component(size_t j) const;
};

struct QPiecewiseMap {
  size_t in = 0, out = 0;
  std::vector<QPiece> pieces;

  // One piece per cell of the domain, all sharing the same affine formula.
  static QPiecewiseMap affine(const SemilinearSet& domain, const QMat& m, const RatVec& v);
  static QPiecewiseMap identity(const SemilinearSet& domain);
  static QPiecewiseMap constant(const SemilinearSet& domain, const RatVec& value);
  std::optional<RatVec> apply(const RatVec& x) const;
  SemilinearSet domain() const;
};

// (x, y) -> (f(x), g(y)) on the product of the domains.
QPiecewiseMap product_map(const QPiecewiseMap& f, const QPiecewiseMap& g);

// Data (I, f, omega) of the Gamma category: f into Gamma^k, omega into Gamma.
struct GammaObject {
  SemilinearSet carrier;
  QPiecewiseMap f;
  QPiecewiseMap omega;
};

struct Verdict {
  bool ok = true;
  std::string reason;
  std::optional<RatVec> witness;
};

// F: src -> dst bijective with sum f + omega preserved.
Verdict check_mG_morphism(const QPiecewiseMap& F, const GammaObject& src, const GammaObject& dst);

// F bijective src -> dst (on carriers); the F-pieces restricted to src refined per cell.
Verdict check_bijection(const QPiecewiseMap& F, const SemilinearSet& src, const SemilinearSet& dst);

// Checks lhs(x) == rhs(F(x)) + extra(x) on src. lhs, rhs, extra are scalar-valued maps;
// a missing extra means zero.
Verdict check_identity(const QPiecewiseMap& F, const SemilinearSet& src, const std::vector<const QPiecewiseMap*>& lhs,
                       const std::vector<const QPiecewiseMap*>& rhs_after_F,
                       const std::vector<const QPiecewiseMap*>& extra_rhs);

}  // namespace igusa::semilinear
