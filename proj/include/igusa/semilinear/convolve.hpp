#pragma once

#include <map>

#include "igusa/semilinear/euler.hpp"

namespace igusa::semilinear {

// I in Gamma x Gamma^a, J in Gamma x Gamma^b (first coordinate the grading).
// Result K in Gamma x Gamma^(a+b+1), coordinates (gamma, x, y, alpha) with (alpha, x) in I
// and (gamma - alpha, y) in J.
SemilinearSet convolve(const SemilinearSet& I, const SemilinearSet& J);

// Grading values of a family whose support is a finite set of points; throws otherwise.
std::vector<Rat> discrete_support(const SemilinearSet& family);

// gamma -> chi_g of the fiber, over a discrete support.
std::map<Rat, Int> fiber_series(const SemilinearSet& family);

}  // namespace igusa::semilinear
