#pragma once


#include "igusa/grothring/rvclass.hpp"

namespace igusa::grothring {

struct Carrier {
  semilinear::SemilinearSet set;
  VolumeFormData form;
};

// omega(x) == omega'(F(x)) + jac(x) on every piece; F must map src bijectively onto dst.
semilinear::Verdict check_gamma_measure_preserving(const semilinear::QPiecewiseMap& F, const Carrier& src,
                                                   const Carrier& dst, const Affine& jac);

}  // namespace igusa::grothring
