#pragma once

#include <stdexcept>
#include <vector>

#include "igusa/core/formula.hpp"
#include "igusa/genfun/ratfun.hpp"
#include "igusa/presburger/set.hpp"

namespace igusa::genfun {

// Summand q^{-Lq(x)} * prod Ti^{LT_i(x)} over the summation variables x.
struct ExponentData {
  Affine Lq;
  std::vector<Affine> LT;

  ExponentData() = default;
  ExponentData(Affine lq, std::vector<Affine> lt) : Lq(std::move(lq)), LT(std::move(lt)) {}
  static ExponentData from_lin(const presburger::LinTerm& lq, const std::vector<presburger::LinTerm>& lt);

  size_t arity() const { return Lq.arity(); }
  size_t nvars() const { return 1 + LT.size(); }
  // Exponent vector (q, T1..Tk) at x; throws unless integral.
  Exps at(const IntVec& x) const;
};

struct Divergent : std::runtime_error {
  IntVec direction;
  explicit Divergent(IntVec dir);
};

struct NonIntegralExponent : std::runtime_error {
  IntVec point;
  explicit NonIntegralExponent(IntVec p);
};

RatFun sum_over_cell(const presburger::PCell& cell, const ExponentData& e);
RatFun sum_over_set(const presburger::PresburgerSet& s, const ExponentData& e);

// Direct sum over the points of s inside box, evaluated at (q, t).
Rat truncated_sum(const presburger::PresburgerSet& s, const ExponentData& e, const presburger::Box& box,
                  const Rat& q, const RatVec& t);

}  // namespace igusa::genfun
