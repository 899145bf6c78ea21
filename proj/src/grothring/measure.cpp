#include "igusa/grothring/measure.hpp"

#include <stdexcept>

namespace igusa::grothring {

using semilinear::QPiecewiseMap;
using semilinear::Verdict;

Verdict check_gamma_measure_preserving(const QPiecewiseMap& F, const Carrier& src, const Carrier& dst, const Affine& jac) {
  if (F.in != src.set.arity() || F.out != dst.set.arity()) throw std::invalid_argument("carrier mismatch: map arity");
  if (jac.arity() != src.set.arity()) throw std::invalid_argument("carrier mismatch: Jacobian arity");
  Verdict bij = semilinear::check_bijection(F, src.set, dst.set);
  if (!bij.ok) throw std::invalid_argument("carrier mismatch: " + bij.reason);
  QPiecewiseMap j = QPiecewiseMap::affine(src.set, {jac.coef}, {jac.constant});
  return semilinear::check_identity(F, src.set, {&src.form.omega}, {&dst.form.omega}, {&j});
}

}  // namespace igusa::grothring
