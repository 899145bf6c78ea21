// SPDX-License-Identifier: MIT
#include "igusa/grothring/retract.hpp"

#include <stdexcept>

namespace igusa::grothring {

namespace {

ResPoly base_of(Euler which) { return which == Euler::Eg ? ResPoly::A() : ResPoly::v(); }

Retracted reduce(Retracted r) {
  if (r.numerator.is_zero()) {
    r.power = 0;
    return r;
  }
  while (r.power > 0) {
    auto q = r.which == Euler::Eg ? r.numerator.div_A() : r.numerator.div_v();
    if (!q) break;
    r.numerator = *q;
    --r.power;
  }
  return r;
}

ResPoly modded(const ResPoly& p, Euler which) {
  return p.subst_v(which == Euler::Eg ? -ResPoly::u() : ResPoly());
}

}  // namespace

Retracted Retracted::localized(const ResPoly& x, int k, Euler which) {
  Retracted r;
  r.which = which;
  r.mode = RetractMode::Plain;
  r.numerator = x;
  r.power = k;
  return reduce(r);
}

Retracted Retracted::quotient(const ResClass& x, Euler which, RetractMode mode) {
  Retracted r;
  r.which = which;
  r.mode = mode;
  ResClass acc;
  for (const auto& [k, p] : x.components()) acc = acc + ResClass::from_poly(modded(p, which));
  r.graded = acc;
  return r;
}

bool Retracted::is_zero() const { return mode == RetractMode::Plain ? numerator.is_zero() : graded.is_zero(); }

bool Retracted::operator==(const Retracted& o) const {
  if (which != o.which || mode != o.mode) return false;
  if (mode != RetractMode::Plain) return graded == o.graded;
  ResPoly b = base_of(which);
  return numerator * b.pow(static_cast<unsigned>(o.power)) == o.numerator * b.pow(static_cast<unsigned>(power));
}

std::string Retracted::str() const {
  if (mode != RetractMode::Plain) {
    std::string m = which == Euler::Eg ? "(A)" : "([1]_1)";
    return graded.str() + " mod " + m;
  }
  if (numerator.is_zero()) return "0";
  std::string n = numerator.str();
  if (power == 0) return n;
  std::string b = which == Euler::Eg ? "(u + v)" : "v";
  return "(" + n + ")/" + b + (power > 1 ? "^" + std::to_string(power) : "");
}

Retracted retract(const RVClass& x, Euler which, RetractMode mode) {
  if (x.arith() == Arith::Semiring) throw std::domain_error("retract needs ring mode");
  auto chi = [&](const GammaRep& y) {
    auto e = y.euler();
    return which == Euler::Eg ? e.chi_g : e.chi_b;
  };
  if (mode != RetractMode::Plain) {
    ResPoly total;
    for (const auto& [k, ts] : x.grades())
      for (const auto& t : ts) total = total + t.x * chi(t.y);
    return Retracted::quotient(ResClass::from_poly(total), which, mode);
  }
  int n = 0;
  for (const auto& [k, ts] : x.grades()) n = std::max(n, k);
  ResPoly b = base_of(which), num;
  for (const auto& [k, ts] : x.grades())
    for (const auto& t : ts) num = num + t.x * chi(t.y) * b.pow(static_cast<unsigned>(n - k));
  return Retracted::localized(num, n, which);
}

}  // namespace igusa::grothring
