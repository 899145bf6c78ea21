// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/presburger/cell.hpp"

namespace igusa::presburger {

struct Box {
  IntVec lo, hi;  // inclusive
  static Box cube(size_t n, long lo, long hi);
  size_t arity() const { return lo.size(); }
};

// Finite disjoint union of nonempty cells.
class PresburgerSet {
 public:
  PresburgerSet() = default;
  explicit PresburgerSet(size_t n) : arity_(n) {}
  static PresburgerSet universe(size_t n);
  static PresburgerSet empty(size_t n) { return PresburgerSet(n); }
  static PresburgerSet from_cell(const PCell& c);
  // Cells assumed pairwise disjoint; empty ones are dropped.
  static PresburgerSet from_disjoint(size_t n, const std::vector<PCell>& cells);

  size_t arity() const { return arity_; }
  const std::vector<PCell>& cells() const { return cells_; }
  bool is_empty() const { return cells_.empty(); }
  bool contains(const IntVec& x) const;
  std::optional<IntVec> find_point() const;

  PresburgerSet unite(const PresburgerSet& o) const;
  PresburgerSet intersect(const PresburgerSet& o) const;
  PresburgerSet minus(const PresburgerSet& o) const;
  PresburgerSet complement() const;

  // Projection along variable k (exists x_k).
  PresburgerSet eliminate(size_t k) const;
  // Keep only the listed coordinates (in that order), projecting the rest away.
  PresburgerSet project_onto(const std::vector<size_t>& keep) const;
  PresburgerSet insert_var(size_t i) const;
  // Reorder coordinates: new coordinate j is old coordinate perm[j].
  PresburgerSet permute(const std::vector<size_t>& perm) const;
  // Preimage under x -> images(x).
  PresburgerSet pullback(const std::vector<LinTerm>& images, size_t n) const;
  PresburgerSet product(const PresburgerSet& o) const;

  // {c x : x in s}
  PresburgerSet scale(const Int& c) const;
  // {x : x / rho in s}, s read over Q with its congruences relative to Z.
  PresburgerSet dilate(const Int& rho) const;

  std::vector<IntVec> enumerate(const Box& box) const;
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  size_t arity_ = 0;
  std::vector<PCell> cells_;
};

PresburgerSet boolean_op(const PresburgerSet& a, const PresburgerSet& b, const std::string& op);
bool equivalent(const PresburgerSet& a, const PresburgerSet& b);
// A point of the symmetric difference, if any.
std::optional<IntVec> distinguishing_point(const PresburgerSet& a, const PresburgerSet& b);

// Merge cells that differ only in the residue of one congruence.
void merge_cells(std::vector<PCell>& cells);

// Cell-level set difference: disjoint cells covering a \ b.
std::vector<PCell> cell_minus(const PCell& a, const PCell& b);

// Points of one cell inside a box, lexicographic.
std::vector<IntVec> enumerate_cell(const PCell& c, const Box& box);

}  // namespace igusa::presburger
