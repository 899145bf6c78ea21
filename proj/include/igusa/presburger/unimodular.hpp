#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/core/intmat.hpp"
#include "igusa/presburger/set.hpp"

namespace igusa::presburger {

struct AffinePiece {
  PCell domain;
  IntMat matrix;  // n x n
  IntVec offset;
  IntVec apply(const IntVec& x) const;
};

struct PAffineMap {
  size_t arity = 0;
  std::vector<AffinePiece> pieces;
  // Value at x using the first piece containing it.
  std::optional<IntVec> apply(const IntVec& x) const;
};

struct UnimodularResult {
  bool ok = false;
  std::vector<AffinePiece> pieces;
  std::string reason;             // on rejection
  std::vector<IntVec> witness;    // points certifying the rejection
  Int lattice_index = 0;          // for non-unimodularizable pieces
};

struct UnimodularOptions {
  Box search_box;              // witnesses are first sought here; default [-100,100]^n
  size_t max_finite_points = 20000;
};

// Refine f on D into pieces given by GL_n(Z) matrices, provided f maps D bijectively onto E.
UnimodularResult unimodularize(const PAffineMap& f, const PresburgerSet& D, const PresburgerSet& E,
                               UnimodularOptions opt = {});

// Image of a cell under x -> A x + a.
PresburgerSet affine_image(const PCell& c, const IntMat& A, const IntVec& a);

// Range of a linear functional over a cell: nullopt bound means unbounded.
struct Range {
  bool empty = false;
  std::optional<Int> lo, hi;
};
Range functional_range(const PCell& c, const LinTerm& l);

}  // namespace igusa::presburger
