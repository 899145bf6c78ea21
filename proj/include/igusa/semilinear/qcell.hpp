#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/core/formula.hpp"
#include "igusa/core/qlinalg.hpp"
#include "igusa/semilinear/qlinear.hpp"

namespace igusa::semilinear {

// One coordinate of a cylindrical cell. Bounds are affine in the earlier coordinates.
struct Level {
  enum class Kind { Section, Band };
  Kind kind = Kind::Band;
  Affine sec;                    // Section: x_i = sec(x_0..x_{i-1})
  std::optional<Affine> lo, hi;  // Band: lo < x_i < hi, missing means infinite
  bool operator==(const Level&) const = default;
};

struct QCell {
  size_t arity = 0;
  std::vector<Level> levels;
  RatVec sample;

  size_t dim() const;
  bool bounded() const;
  bool contains(const RatVec& x) const;
  Formula formula() const;
  QSystem system() const;
  // Affine parametrisation x = base + dirs * t over the band coordinates (dirs is arity x dim).
  void hull(RatVec& base, QMat& dirs) const;
  // Point with band coordinate j placed at position frac[j] in (0,1) of its interval
  // (unbounded sides use offsets 1/frac - 1 instead).
  RatVec point_at(const std::vector<Rat>& frac) const;
  void resample();
  QCell product(const QCell& o) const;
  // Drop the last k levels.
  QCell truncated(size_t k) const;
  // Fix x_0 = g (g must lie in the level-0 range); result has arity - 1.
  std::optional<QCell> fiber(const Rat& g) const;
  std::string str(const std::vector<std::string>& names = {}) const;
};

class SemilinearSet {
 public:
  SemilinearSet() = default;
  explicit SemilinearSet(size_t n) : arity_(n) {}
  static SemilinearSet from_cells(size_t n, std::vector<QCell> cells);
  static SemilinearSet point(const RatVec& p);

  size_t arity() const { return arity_; }
  const std::vector<QCell>& cells() const { return cells_; }
  bool is_empty() const { return cells_.empty(); }
  bool contains(const RatVec& x) const;
  Formula formula() const;

  SemilinearSet unite(const SemilinearSet& o) const;
  SemilinearSet intersect(const SemilinearSet& o) const;
  SemilinearSet minus(const SemilinearSet& o) const;
  SemilinearSet complement() const;
  SemilinearSet product(const SemilinearSet& o) const;
  // Fiber over x_0 = g, in the remaining coordinates.
  SemilinearSet fiber(const Rat& g) const;
  // Image under x -> M x + v (convex cell images computed by Fourier-Motzkin).
  SemilinearSet image(const QMat& m, const RatVec& v) const;
  // Refinement by extra cutting hyperplanes; same point set.
  SemilinearSet refine(const std::vector<Affine>& cuts) const;
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  size_t arity_ = 0;
  std::vector<QCell> cells_;
};

// Cylindrical decomposition of a formula over Q^n (quantifiers allowed, no congruences).
// Extra polynomials refine the decomposition without changing the set.
SemilinearSet decompose(const Formula& f, size_t arity, const std::vector<Affine>& extra = {});

// Replace variable i by images[i] (quantifier-free formulas).
Formula substitute(const Formula& f, const std::vector<Affine>& images);
Formula system_formula(const QSystem& s);

}  // namespace igusa::semilinear
