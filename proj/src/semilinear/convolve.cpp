#include "igusa/semilinear/convolve.hpp"

#include <set>
#include <stdexcept>

namespace igusa::semilinear {

SemilinearSet convolve(const SemilinearSet& I, const SemilinearSet& J) {
  if (I.arity() == 0 || J.arity() == 0) throw std::invalid_argument("convolve: families need a grading coordinate");
  size_t a = I.arity() - 1, b = J.arity() - 1;
  size_t n = 2 + a + b;
  size_t alpha = n - 1;
  std::vector<Affine> ii{Affine::var(n, alpha)};
  for (size_t i = 0; i < a; ++i) ii.push_back(Affine::var(n, 1 + i));
  std::vector<Affine> jj{Affine::var(n, 0) - Affine::var(n, alpha)};
  for (size_t j = 0; j < b; ++j) jj.push_back(Affine::var(n, 1 + a + j));
  Formula f = Formula::conj({substitute(I.formula(), ii), substitute(J.formula(), jj)});
  return decompose(f, n);
}

std::vector<Rat> discrete_support(const SemilinearSet& family) {
  std::set<Rat> pts;
  for (const auto& c : family.cells()) {
    if (c.levels.empty() || c.levels[0].kind != Level::Kind::Section)
      throw std::invalid_argument("discrete_support: support is not a finite set of points");
    pts.insert(c.levels[0].sec.constant);
  }
  return {pts.begin(), pts.end()};
}

std::map<Rat, Int> fiber_series(const SemilinearSet& family) {
  std::map<Rat, Int> s;
  for (const auto& g : discrete_support(family)) {
    Int chi = euler(family.fiber(g)).chi_g;
    if (chi != 0) s[g] = chi;
  }
  return s;
}

}  // namespace igusa::semilinear
