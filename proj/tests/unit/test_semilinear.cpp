#include <doctest.h>

#include "igusa/semilinear/convolve.hpp"
#include "igusa/semilinear/euler.hpp"
#include "igusa/semilinear/piecewise.hpp"

using namespace igusa;
using namespace igusa::semilinear;

namespace {

Affine X(size_t n, size_t i) { return Affine::var(n, i); }
Affine K(size_t n, long c) { return Affine::konst(n, c); }
Formula at(const Affine& a, Rel r) { return Formula::atom(a, r); }

SemilinearSet interval(long lo, long hi) {
  return decompose(Formula::conj({at(X(1, 0) - K(1, lo), Rel::GT), at(K(1, hi) - X(1, 0), Rel::GT)}), 1);
}

SemilinearSet positive() { return decompose(at(X(1, 0), Rel::GT), 1); }

}  // namespace

TEST_CASE("decompose: open interval is one bounded band") {
  auto s = interval(0, 1);
  REQUIRE(s.cells().size() == 1);
  CHECK(s.cells()[0].dim() == 1);
  CHECK(s.cells()[0].bounded());
}

TEST_CASE("decompose: closed half line is a point plus an unbounded band") {
  auto s = decompose(at(X(1, 0), Rel::GE), 1);
  REQUIRE(s.cells().size() == 2);
  int pts = 0, bands = 0;
  for (const auto& c : s.cells()) {
    if (c.dim() == 0) {
      ++pts;
      CHECK(c.sample == RatVec{0});
    } else {
      ++bands;
      CHECK_FALSE(c.bounded());
    }
  }
  CHECK(pts == 1);
  CHECK(bands == 1);
}

TEST_CASE("decompose: open triangle and its closure") {
  Affine x = X(2, 0), y = X(2, 1);
  auto open = decompose(Formula::conj({at(x, Rel::GT), at(y, Rel::GT), at(K(2, 1) - x - y, Rel::GT)}), 2);
  REQUIRE(open.cells().size() == 1);
  CHECK(open.cells()[0].dim() == 2);
  auto closed = decompose(Formula::conj({at(x, Rel::GE), at(y, Rel::GE), at(K(2, 1) - x - y, Rel::GE)}), 2);
  REQUIRE(closed.cells().size() == 7);
  int by_dim[3] = {0, 0, 0};
  for (const auto& c : closed.cells()) by_dim[c.dim()]++;
  CHECK(by_dim[0] == 3);
  CHECK(by_dim[1] == 3);
  CHECK(by_dim[2] == 1);
  auto e = euler(closed);
  CHECK(e.chi_g == 1);
  CHECK(e.chi_b == 1);
}

TEST_CASE("decompose: every point lies in exactly one cell") {
  Affine x = X(2, 0), y = X(2, 1);
  auto s = decompose(Formula::disj({at(x - y, Rel::GE), at(x + y - K(2, 2), Rel::EQ)}), 2);
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      RatVec p{make_rat(a, 2), make_rat(b, 2)};
      int hits = 0;
      for (const auto& c : s.cells()) hits += c.contains(p);
      bool in = p[0] >= p[1] || p[0] + p[1] == 2;
      CHECK(hits == (in ? 1 : 0));
    }
}

TEST_CASE("decompose: existential quantifier") {
  // exists y: 0 < y < x  <=>  x > 0
  Affine x = X(2, 0), y = X(2, 1);
  auto s = decompose(Formula::exists("y", Formula::conj({at(y, Rel::GT), at(x - y, Rel::GT)})), 1);
  CHECK(s.contains({Rat(1, 3)}));
  CHECK_FALSE(s.contains({Rat(0)}));
  CHECK(euler(s).chi_g == -1);
}

TEST_CASE("euler examples") {
  auto h = euler(positive());
  CHECK(h.chi_g == -1);
  CHECK(h.chi_b == 0);
  CHECK(h.cls == GammaBarClass{0, 1});
  CHECK(h.cls.str() == "X");

  auto p = euler(SemilinearSet::point({Rat(3)}));
  CHECK(p.chi_g == 1);
  CHECK(p.chi_b == 1);
  CHECK(p.cls.str() == "1");

  auto quad = decompose(Formula::conj({at(X(2, 0), Rel::GT), at(X(2, 1), Rel::GT)}), 2);
  auto q = euler(quad);
  CHECK(q.chi_g == 1);
  CHECK(q.chi_b == 0);
  CHECK(q.cls == GammaBarClass{0, -1});
  CHECK(q.cls == h.cls * h.cls);
  CHECK(q.cls.str() == "-X");
}

TEST_CASE("GammaBarClass ring characters") {
  GammaBarClass c{3, -2};
  CHECK(c.chi_b() == 3);
  CHECK(c.chi_g() == 5);
  GammaBarClass x{0, 1};
  CHECK(x * x == -x);
  CHECK(GammaBarClass{2, 0}.str() == "2");
  CHECK(GammaBarClass{1, -3}.str() == "1 - 3X");
}

TEST_CASE("gamma_jacobian") {
  CHECK(gamma_jacobian(RatVec{1, 2}, RatVec{3, 0}) == 0);
  CHECK(gamma_jacobian(RatVec{0}, RatVec{5}) == 5);
  CHECK(gamma_jacobian(RatVec{1, 1, 1}, RatVec{0, 0, 0}) == -3);
  std::vector<std::optional<Rat>> u{Rat(1), std::nullopt}, v{Rat(0), Rat(0)};
  CHECK_THROWS_AS(gamma_jacobian(u, v), std::invalid_argument);
}

TEST_CASE("qdim") {
  CHECK(qdim(SemilinearSet::point({Rat(0)})) == 0u);
  CHECK(qdim(positive()) == 1u);
  auto seg_pt = interval(0, 1).unite(SemilinearSet::point({Rat(5)}));
  CHECK(qdim(seg_pt) == 1u);
  CHECK_FALSE(qdim(SemilinearSet(2)).has_value());
}

TEST_CASE("set algebra") {
  auto a = interval(0, 2), b = interval(1, 3);
  auto i = a.intersect(b);
  CHECK(i.contains({Rat(3, 2)}));
  CHECK_FALSE(i.contains({Rat(1)}));
  auto u = a.unite(b);
  CHECK(euler(u).chi_g == -1);
  auto d = a.minus(b);  // (0,1]
  CHECK(d.contains({Rat(1)}));
  CHECK(euler(d).chi_g == 0);
  CHECK(euler(d).chi_b == 0);
  auto c = a.complement();  // (-oo,0] u [2,oo)
  CHECK(euler(c).chi_g == 0);
  CHECK(euler(c).chi_b == 2);
}

TEST_CASE("image under affine maps") {
  auto s = interval(0, 1);
  auto im = s.image({{Rat(2)}}, {Rat(1)});
  CHECK(im.contains({Rat(2)}));
  CHECK_FALSE(im.contains({Rat(3)}));
  // projection of a triangle
  auto tri = decompose(Formula::conj({at(X(2, 0), Rel::GT), at(X(2, 1), Rel::GT), at(K(2, 1) - X(2, 0) - X(2, 1), Rel::GT)}), 2);
  auto pr = tri.image({{Rat(1), Rat(0)}}, {Rat(0)});
  CHECK(pr.cells().size() == 1);
  CHECK(pr.contains({Rat(1, 2)}));
}

TEST_CASE("check_mG_morphism examples") {
  auto src = interval(0, 1), dst = interval(1, 2);
  GammaObject a{src, QPiecewiseMap::identity(src), QPiecewiseMap::constant(src, {Rat(0)})};
  auto id = QPiecewiseMap::identity(src);
  CHECK(check_mG_morphism(id, a, a).ok);

  auto shift = QPiecewiseMap::affine(src, {{Rat(1)}}, {Rat(1)});
  GammaObject b{dst, QPiecewiseMap::identity(dst), QPiecewiseMap::constant(dst, {Rat(0)})};
  auto v = check_mG_morphism(shift, a, b);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK(src.contains(*v.witness));

  GammaObject a1{src, QPiecewiseMap::identity(src), QPiecewiseMap::constant(src, {Rat(1)})};
  CHECK(check_mG_morphism(shift, a1, b).ok);
}

TEST_CASE("check_mG_morphism: bijectivity failures") {
  auto src = interval(0, 1);
  // x -> 2x lands on (0,2), not (0,1)
  auto dbl = QPiecewiseMap::affine(src, {{Rat(2)}}, {Rat(0)});
  GammaObject a{src, QPiecewiseMap::identity(src), QPiecewiseMap::constant(src, {Rat(0)})};
  auto v = check_bijection(dbl, src, src);
  CHECK_FALSE(v.ok);
  // a constant map collapses the interval
  auto cst = QPiecewiseMap::constant(src, {Rat(1, 2)});
  auto w = check_bijection(cst, src, SemilinearSet::point({Rat(1, 2)}));
  CHECK_FALSE(w.ok);
  CHECK(w.reason.find("injective") != std::string::npos);
  // undefined on part of src
  auto half = QPiecewiseMap::identity(interval(0, 1).intersect(interval(0, 1)).minus(SemilinearSet::point({Rat(1, 2)})));
  CHECK_THROWS_AS(check_bijection(half, src, src), std::invalid_argument);
}

TEST_CASE("check_mG_morphism: piecewise reflection") {
  // (0,2) -> (0,2): x -> x on (0,1), 1 fixed, x -> 3 - x on (1,2)... image (1,2) overlaps? no: 3-x maps (1,2) onto (1,2)
  auto src = interval(0, 2);
  QPiecewiseMap F;
  F.in = F.out = 1;
  auto parts = src.refine({X(1, 0) - K(1, 1)});
  for (const auto& c : parts.cells()) {
    if (c.sample[0] > 1) F.pieces.push_back({c, {{Rat(-1)}}, {Rat(3)}});
    else F.pieces.push_back({c, {{Rat(1)}}, {Rat(0)}});
  }
  CHECK(check_bijection(F, src, src).ok);
  // sum f + omega: f = id; omega compensates on the reflected part: x + w(x) = (3-x) + 0
  QPiecewiseMap omega;
  omega.in = omega.out = 1;
  for (const auto& p : F.pieces) {
    if (p.domain.sample[0] > 1) omega.pieces.push_back({p.domain, {{Rat(-2)}}, {Rat(3)}});
    else omega.pieces.push_back({p.domain, {{Rat(0)}}, {Rat(0)}});
  }
  GammaObject a{src, QPiecewiseMap::identity(src), omega};
  GammaObject b{src, QPiecewiseMap::identity(src), QPiecewiseMap::constant(src, {Rat(0)})};
  CHECK(check_mG_morphism(F, a, b).ok);
  GammaObject a0{src, QPiecewiseMap::identity(src), QPiecewiseMap::constant(src, {Rat(0)})};
  auto v = check_mG_morphism(F, a0, b);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness);
  CHECK((*v.witness)[0] > 1);
}

TEST_CASE("convolve: segment fiber") {
  // I = {(g, x) : x = g, 0 <= g <= 1}
  Affine g = X(2, 0), x = X(2, 1);
  auto I = decompose(Formula::conj({at(x - g, Rel::EQ), at(g, Rel::GE), at(K(2, 1) - g, Rel::GE)}), 2);
  auto Kf = convolve(I, I);
  CHECK(Kf.arity() == 4);
  auto fib = Kf.fiber(Rat(1));  // coordinates (x, y, alpha)
  CHECK(fib.contains({Rat(1, 3), Rat(2, 3), Rat(1, 3)}));
  CHECK(fib.contains({Rat(0), Rat(1), Rat(0)}));
  CHECK_FALSE(fib.contains({Rat(1, 3), Rat(1, 3), Rat(1, 3)}));
  CHECK(qdim(fib) == 1u);
  CHECK(euler(fib).chi_g == 1);
  CHECK(euler(Kf.fiber(Rat(3))).chi_g == 0);
}

TEST_CASE("convolve: unit family") {
  Affine g = X(2, 0), x = X(2, 1);
  auto I = decompose(Formula::conj({at(x, Rel::GT), at(g - x, Rel::GT)}), 2);  // fiber (0, g)
  auto unit = SemilinearSet::point({Rat(0)});
  auto Kf = convolve(I, unit);
  for (long k = -2; k <= 4; ++k) {
    Rat gam = make_rat(k, 2);
    auto e1 = euler(I.fiber(gam)), e2 = euler(Kf.fiber(gam));
    CHECK(e1.chi_g == e2.chi_g);
    CHECK(e1.chi_b == e2.chi_b);
    CHECK(qdim(I.fiber(gam)) == qdim(Kf.fiber(gam)));
  }
}

TEST_CASE("convolve: supports add") {
  Affine g = X(1, 0);
  auto I = decompose(Formula::disj({at(g, Rel::EQ), at(g - K(1, 1), Rel::EQ)}), 1);
  auto J = decompose(Formula::disj({at(g, Rel::EQ), at(g - K(1, 2), Rel::EQ)}), 1);
  auto sup = discrete_support(convolve(I, J));
  CHECK(sup == std::vector<Rat>{0, 1, 2, 3});
  CHECK_THROWS(discrete_support(positive()));
}

TEST_CASE("stratified sets over Gamma_oo") {
  StratifiedSet s;
  s.arity = 2;
  s.strata.push_back({{false, false}, decompose(Formula::conj({at(X(2, 0), Rel::GT), at(X(2, 1), Rel::GT)}), 2)});
  s.strata.push_back({{false, true}, positive()});
  s.strata.push_back({{true, true}, SemilinearSet(0).unite(decompose(Formula::truth(true), 0))});
  CHECK(s.contains({Rat(1), std::nullopt}));
  CHECK_FALSE(s.contains({std::nullopt, Rat(1)}));
  auto e = euler(s);
  CHECK(e.chi_g == 1 - 1 + 1);
  CHECK(e.chi_b == 0 + 0 + 1);
}

TEST_CASE("QSystem: infimum and find_point") {
  QSystem s(2);
  s.add(X(2, 0), CKind::GE).add(X(2, 1), CKind::GT).add(K(2, 1) - X(2, 0) - X(2, 1), CKind::GE);
  auto lo = s.infimum(X(2, 0) + X(2, 1));
  REQUIRE(lo);
  CHECK(lo->value == 0);
  CHECK_FALSE(lo->attained);
  auto hi = s.supremum(X(2, 0) + X(2, 1));
  REQUIRE(hi);
  CHECK(hi->value == 1);
  CHECK(hi->attained);
  auto p = s.find_point();
  REQUIRE(p);
  CHECK(s.satisfied_by(*p));
  s.add(X(2, 1) - K(2, 2), CKind::GE);
  CHECK_FALSE(s.feasible());
}
