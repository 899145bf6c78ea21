#pragma once

#include <optional>
#include <vector>

#include "igusa/core/formula.hpp"

namespace igusa::semilinear {

enum class CKind { GE, GT, EQ };

// a(x) >= 0, a(x) > 0 or a(x) == 0 over Q.
struct QConstraint {
  Affine a;
  CKind kind = CKind::GE;
  bool operator==(const QConstraint&) const = default;
};

// Conjunction of rational linear constraints; Fourier-Motzkin elimination.
struct QSystem {
  size_t arity = 0;
  std::vector<QConstraint> cs;
  bool trivially_false = false;

  explicit QSystem(size_t n = 0) : arity(n) {}
  QSystem& add(const Affine& a, CKind k);
  QSystem& simplify();
  // Projection removing variable i (arity decreases by one).
  QSystem eliminate(size_t i) const;
  bool feasible() const;
  // Points satisfying the system; arity must match.
  bool satisfied_by(const RatVec& x) const;
  // Infimum of obj over the system; nullopt when unbounded below or infeasible.
  struct Bound {
    Rat value;
    bool attained;
  };
  std::optional<Bound> infimum(const Affine& obj) const;
  std::optional<Bound> supremum(const Affine& obj) const;
  // Some rational point, if feasible.
  std::optional<RatVec> find_point() const;
};

}  // namespace igusa::semilinear
