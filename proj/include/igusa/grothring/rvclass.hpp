#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "igusa/grothring/resclass.hpp"
#include "igusa/semilinear/euler.hpp"
#include "igusa/semilinear/piecewise.hpp"

namespace igusa::grothring {

using semilinear::QPiecewiseMap;
using semilinear::SemilinearSet;

// Gamma part of a volume form, plus a marker for a nontrivial K-part (the unit twist).
struct VolumeFormData {
  QPiecewiseMap omega;
  bool unit_twist = false;
};

// One representative (I, f) of Gamma[k], optionally with a volume form.
struct GammaRep {
  SemilinearSet I;
  QPiecewiseMap f;
  std::optional<VolumeFormData> vol;

  int grade() const { return static_cast<int>(f.out); }
  semilinear::EulerData euler() const { return semilinear::euler(I); }
  // Representative-level identity key.
  std::string key() const;
  GammaRep product(const GammaRep& o) const;

  // [0]_k: the origin of Gamma^k with the identity.
  static GammaRep origin(int k);
  // [H]_1 = ((0, oo), id)
  static GammaRep half_line();
  static GammaRep with_identity(const SemilinearSet& I);
};

enum class Arith { Ring, Semiring };

// Formal integer combination of representatives of one grade.
struct GammaGradeClass {
  int grade = 0;
  std::vector<std::pair<Int, GammaRep>> terms;

  static GammaGradeClass of(const GammaRep& r, const Int& c = 1);
  GammaGradeClass operator+(const GammaGradeClass& o) const;
  Int chi_g() const;
  Int chi_b() const;
};

// x (x) y with x homogeneous of degree k and y of grade k.
struct Tensor {
  ResPoly x;
  GammaRep y;
};

class RVClass {
 public:
  RVClass() = default;
  explicit RVClass(Arith a) : arith_(a) {}
  static RVClass tensor(const ResPoly& x, const GammaRep& y, Arith a = Arith::Ring);
  static RVClass one(Arith a = Arith::Ring);
  // A pure residue class x sits as x (x) [0]_k in each grade k.
  static RVClass from_res(const ResClass& x);

  Arith arith() const { return arith_; }
  const std::map<int, std::vector<Tensor>>& grades() const { return grades_; }
  bool is_zero() const { return grades_.empty(); }
  std::vector<int> grade_list() const;

  RVClass operator+(const RVClass& o) const;
  RVClass operator-(const RVClass& o) const;
  RVClass operator*(const RVClass& o) const;
  RVClass operator*(const Int& c) const;
  // Same tensors after folding (representative level).
  bool same_form(const RVClass& o) const;
  std::string str() const;

 private:
  void add(int k, const ResPoly& x, const GammaRep& y);
  void check() const;
  Arith arith_ = Arith::Ring;
  std::map<int, std::vector<Tensor>> grades_;
};

enum class LiftMode { Plain, Mu };
RVClass lift_gamma(const GammaGradeClass& x, LiftMode mode = LiftMode::Plain);

enum class JVariant { Plain, MuGamma, Mu };
// Plain: [1]_0 + j. MuGamma: j_{mu Gamma}. Mu: j_mu.
RVClass generator_j(JVariant variant, Arith a = Arith::Ring);

}  // namespace igusa::grothring
