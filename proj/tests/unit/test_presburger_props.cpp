#include <doctest.h>

#include "igusa/presburger/formula.hpp"
#include "igusa/presburger/unimodular.hpp"
#include "qe_gen.hpp"

using namespace igusa;
using namespace igusa::presburger;

namespace {

PresburgerSet random_set(testgen::Rng& g, size_t n) {
  auto f = testgen::random_qf(g, n + 1, 2);
  // drop the role of the last variable: treat it as a free coordinate then project it away half the time
  auto s = to_set(testgen::to_formula(f, n + 1), n + 1);
  if (g.coin()) return s.eliminate(n);
  auto keep = std::vector<size_t>();
  for (size_t i = 0; i < n; ++i) keep.push_back(i);
  return to_set(testgen::to_formula(testgen::random_qf(g, n, 2), n), n);
}

}  // namespace

TEST_CASE("property: elimination agrees with brute-force projection") {
  testgen::Rng g(2024);
  for (int it = 0; it < 30; ++it) {
    size_t nfree = static_cast<size_t>(g.range(1, 2));
    auto qf = testgen::random_qf(g, nfree + 1, 2);
    auto proj = to_set(testgen::to_formula(qf, nfree + 1), nfree + 1).eliminate(nfree);
    long R = nfree == 1 ? 50 : 20;
    Box box = Box::cube(nfree, -R, R);
    auto got = proj.enumerate(box);
    std::vector<IntVec> want;
    std::vector<long> x(nfree, -R);
    while (true) {
      if (testgen::exists_y(qf, x)) {
        IntVec p;
        for (long c : x) p.emplace_back(c);
        want.push_back(p);
      }
      size_t i = nfree;
      while (i-- > 0) {
        if (x[i] < R) {
          ++x[i];
          break;
        }
        x[i] = -R;
      }
      if (i == static_cast<size_t>(-1)) break;
    }
    CHECK(got == want);
  }
}

TEST_CASE("property: boolean algebra laws hold extensionally") {
  testgen::Rng g(99);
  for (int it = 0; it < 15; ++it) {
    size_t n = static_cast<size_t>(g.range(1, 2));
    auto a = random_set(g, n), b = random_set(g, n);
    Box box = Box::cube(n, -12, 12);
    CHECK(a.unite(a).enumerate(box) == a.enumerate(box));
    CHECK(a.intersect(a).enumerate(box) == a.enumerate(box));
    CHECK(a.unite(b).complement().enumerate(box) == a.complement().intersect(b.complement()).enumerate(box));
    CHECK(a.intersect(b).complement().enumerate(box) == a.complement().unite(b.complement()).enumerate(box));
    // cells stay disjoint
    auto ab = a.unite(b);
    const auto& cs = ab.cells();
    for (size_t i = 0; i < cs.size(); ++i)
      for (size_t j = i + 1; j < cs.size(); ++j) CHECK(cell_is_empty(cs[i].intersect(cs[j])));
  }
}

TEST_CASE("property: equivalence is reflexive, symmetric, and respects enumeration") {
  testgen::Rng g(5);
  for (int it = 0; it < 10; ++it) {
    auto a = random_set(g, 1), b = random_set(g, 1);
    CHECK(equivalent(a, a));
    CHECK(equivalent(a, b) == equivalent(b, a));
    auto c = a.minus(b).unite(a.intersect(b));  // same set, different cells
    CHECK(equivalent(a, c));
    if (equivalent(a, b)) CHECK(a.enumerate(Box::cube(1, -40, 40)) == b.enumerate(Box::cube(1, -40, 40)));
  }
}

TEST_CASE("property: scale composes multiplicatively") {
  testgen::Rng g(17);
  for (int it = 0; it < 10; ++it) {
    size_t n = static_cast<size_t>(g.range(1, 2));
    auto s = random_set(g, n);
    long a = g.range(1, 3), b = g.range(1, 3);
    CHECK(equivalent(s.scale(a).scale(b), s.scale(a * b)));
  }
}

TEST_CASE("property: constructed piecewise unimodular bijections are recovered") {
  testgen::Rng g(31);
  std::vector<IntMat> unis = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}, {{1, 2}, {0, 1}}, {{2, 1}, {1, 1}}, {{-1, 0}, {3, 1}}};
  for (int it = 0; it < 6; ++it) {
    // split Z^2 by the sign of x; translate each half into a different place
    const IntMat& A = g.pick(unis);
    const IntMat& B = g.pick(unis);
    PCell left(2), right(2);
    left.add_ge(-LinTerm::var(2, 0) - LinTerm::constant_term(2, 1));
    right.add_ge(LinTerm::var(2, 0));
    PAffineMap f{2, {AffinePiece{left, A, IntVec{0, 0}}, AffinePiece{right, B, IntVec{0, 0}}}};
    PresburgerSet D = PresburgerSet::universe(2);
    PresburgerSet E = affine_image(left, A, {0, 0}).unite(affine_image(right, B, {0, 0}));
    bool overlap = !affine_image(left, A, {0, 0}).intersect(affine_image(right, B, {0, 0})).is_empty();
    auto r = unimodularize(f, D, E);
    CHECK(r.ok == !overlap);
    if (r.ok)
      for (const auto& p : r.pieces) CHECK(abs(determinant(p.matrix)) == 1);
  }
}
