#pragma once

#include "igusa/core/formula.hpp"
#include "igusa/presburger/set.hpp"

namespace igusa::presburger {

// Denominator-free multiple of an affine form (positive factor).
LinTerm clear_denominators(const Affine& a, size_t n);

// Integer points satisfying f; quantifiers are eliminated.
PresburgerSet to_set(const Formula& f, size_t arity);

// Quantifier-free formula describing s.
Formula to_formula(const PresburgerSet& s);

}  // namespace igusa::presburger
