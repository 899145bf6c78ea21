#pragma once

#include <string>

#include "igusa/grothring/rvclass.hpp"

namespace igusa::grothring {

enum class Euler { Eg, Eb };
enum class RetractMode { Plain, MuGamma, Mu };

// Value of a retraction.
// Plain: numerator / B^power in the zeroth graded piece, B = A (Eg) or v (Eb), reduced.
// Mu modes: graded class modulo (A) or (v), normalised by v -> -u or v -> 0.
struct Retracted {
  Euler which = Euler::Eg;
  RetractMode mode = RetractMode::Plain;
  ResPoly numerator;
  int power = 0;
  ResClass graded;

  // x * B^-k for x homogeneous of degree k, reduced.
  static Retracted localized(const ResPoly& x, int k, Euler which);
  static Retracted quotient(const ResClass& x, Euler which, RetractMode mode);
  bool is_zero() const;
  bool operator==(const Retracted& o) const;
  std::string str() const;
};

Retracted retract(const RVClass& x, Euler which, RetractMode mode = RetractMode::Plain);

}  // namespace igusa::grothring
