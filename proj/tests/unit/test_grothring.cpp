#include <doctest.h>

#include "groth_gen.hpp"
#include "igusa/grothring/measure.hpp"
#include "igusa/grothring/retract.hpp"
#include "igusa/grothring/serialize.hpp"
#include "igusa/grothring/twistoid.hpp"

using namespace igusa;
using namespace igusa::grothring;
using semilinear::Level;
using semilinear::QCell;
using semilinear::QPiecewiseMap;
using semilinear::SemilinearSet;
using namespace testgen;

namespace {

genfun::LaurentPoly qpoly(std::initializer_list<long> coefs) {
  genfun::LaurentPoly p(1);
  long e = 0;
  for (long c : coefs) p = p + genfun::LaurentPoly::q_power(1, e++, Rat(c));
  return p;
}

}  // namespace

TEST_CASE("residue classes and point counts") {
  ResClass A = ResClass::A();
  CHECK(A.components().size() == 1);
  CHECK(A.component(1).str() == "u + v");
  CHECK(A.point_count() == qpoly({0, 1}));
  ResClass u = ResClass::u();
  ResClass u3 = u * u * u;
  CHECK(u3.point_count() == qpoly({-1, 3, -3, 1}));
  ResClass A2 = A * A;
  CHECK(A2.component(2).str() == "u^2 + 2*u*v + v^2");
  CHECK(A2.point_count() == qpoly({0, 0, 1}));
  CHECK(A2.point_count(Rat(7)) == 49);
  register_symbol("P1", 1, qpoly({1, 1}));
  ResClass p = ResClass::from_poly(ResPoly::var("P1") * ResPoly::u());
  CHECK(p.components().count(2) == 1);
  CHECK(p.point_count() == qpoly({-1, 0, 1}));
  CHECK_THROWS(ResClass::one(true) - ResClass::one(true));
  CHECK_THROWS(ResClass::from_poly(ResPoly::constant(-1), true));
  CHECK_THROWS(register_symbol("u", 1, qpoly({1})));
}

TEST_CASE("point count is a ring homomorphism per grade") {
  testgen::Rng g(11);
  for (int it = 0; it < 30; ++it) {
    ResClass a = ResClass::from_poly(random_homog(g, static_cast<int>(g.range(0, 3))) + random_homog(g, 1));
    ResClass b = ResClass::from_poly(random_homog(g, static_cast<int>(g.range(0, 3))));
    CHECK((a + b).point_count() == a.point_count() + b.point_count());
    CHECK((a * b).point_count() == a.point_count() * b.point_count());
    ResClass ab = a * b;
    for (const auto& [k, p] : ab.components()) CHECK(p.degree() == k);
  }
}

TEST_CASE("RV classes: bilinearity and grades") {
  GammaRep h = GammaRep::half_line(), o = GammaRep::origin(1);
  RVClass a = RVClass::tensor(ResPoly::u(), h);
  RVClass b = RVClass::tensor(ResPoly::v(), o);
  RVClass ab = a * b;
  REQUIRE(ab.grades().size() == 1);
  REQUIRE(ab.grades().count(2) == 1);
  const auto& t = ab.grades().at(2).front();
  CHECK(t.x == ResPoly::u() * ResPoly::v());
  CHECK(t.y.I.contains({Rat(5), Rat(0)}));
  CHECK(!t.y.I.contains({Rat(5), Rat(1)}));
  CHECK(t.y.f.apply({Rat(3), Rat(0)}) == RatVec{Rat(3), Rat(0)});
  CHECK((a * RVClass()).is_zero());
  // folding: 2 (u (x) H) - (u (x) H) = u (x) H
  CHECK((a * Int(2) - a).same_form(a));
  testgen::Rng g(12);
  for (int it = 0; it < 20; ++it) {
    RVClass x = RVClass::tensor(random_homog(g, 1), random_rep(g, 1));
    int kx = static_cast<int>(g.range(0, 3)), ky = static_cast<int>(g.range(0, 3));
    RVClass p = RVClass::tensor(random_homog(g, kx), random_rep(g, kx));
    RVClass q = RVClass::tensor(random_homog(g, ky), random_rep(g, ky));
    auto gr = (p * q).grade_list();
    if (!gr.empty()) CHECK(gr == std::vector<int>{kx + ky});
    CHECK(((p + q) * x).same_form(p * x + q * x));
  }
}

TEST_CASE("lifting") {
  auto l0 = lift_gamma(GammaGradeClass::of(GammaRep::origin(1)));
  CHECK(l0.same_form(RVClass::tensor(ResPoly::u(), GammaRep::origin(1))));
  auto lh = lift_gamma(GammaGradeClass::of(GammaRep::half_line()));
  CHECK(lh.same_form(RVClass::tensor(ResPoly::u(), GammaRep::half_line())));
  testgen::Rng g(13);
  for (int it = 0; it < 10; ++it) {
    int k = static_cast<int>(g.range(1, 2));
    auto x = GammaGradeClass::of(random_rep(g, k), g.range(1, 3));
    auto y = GammaGradeClass::of(random_rep(g, k), g.range(1, 3));
    CHECK(lift_gamma(x + y).same_form(lift_gamma(x) + lift_gamma(y)));
    // multiplicative up to representative product
    auto xy = GammaGradeClass::of(x.terms[0].second.product(y.terms[0].second), x.terms[0].first * y.terms[0].first);
    CHECK(lift_gamma(xy).same_form(lift_gamma(x) * lift_gamma(y)));
  }
  auto mu = lift_gamma(GammaGradeClass::of(GammaRep::half_line()), LiftMode::Mu);
  CHECK(mu.grades().at(1).front().y.vol->unit_twist);
}

TEST_CASE("generators and their Euler data") {
  RVClass j = generator_j(JVariant::Plain);
  CHECK(j.grades().count(0) == 1);
  CHECK(j.grades().at(1).size() == 2);
  GammaRep h = GammaRep::half_line();
  CHECK(h.euler().chi_g == -1);
  CHECK(h.euler().chi_b == 0);
  RVClass jm = generator_j(JVariant::Mu);
  bool twisted = false;
  for (const auto& t : jm.grades().at(1))
    if (t.x == ResPoly::u()) twisted = t.y.vol && t.y.vol->unit_twist && t.y.vol->omega.apply({Rat(2)}) == RatVec{Rat(0)};
  CHECK(twisted);
  CHECK_THROWS_AS(generator_j(JVariant::Plain, Arith::Semiring), std::domain_error);
}

TEST_CASE("retractions of the generators") {
  RVClass j = generator_j(JVariant::Plain);
  CHECK(retract(j, Euler::Eg).is_zero());
  CHECK(retract(j, Euler::Eb).is_zero());
  RVClass pt = RVClass::tensor(ResPoly::u(), GammaRep::origin(1));
  Retracted r = retract(pt, Euler::Eb);
  CHECK(r.numerator == ResPoly::u());
  CHECK(r.power == 1);
  CHECK(r.str() == "(u)/v");
  CHECK(retract(generator_j(JVariant::Mu), Euler::Eg, RetractMode::Mu).is_zero());
  CHECK(retract(generator_j(JVariant::Mu), Euler::Eb, RetractMode::Mu).is_zero());
  CHECK(retract(generator_j(JVariant::MuGamma), Euler::Eg, RetractMode::MuGamma).is_zero());
  CHECK(retract(generator_j(JVariant::MuGamma), Euler::Eb, RetractMode::MuGamma).is_zero());
  // A / A reduces to 1
  Retracted a = retract(RVClass::from_res(ResClass::A()), Euler::Eg);
  CHECK(a.numerator == ResPoly::constant(1));
  CHECK(a.power == 0);
}

TEST_CASE("property: the kernel generator is killed") {
  testgen::Rng g(14);
  for (int it = 0; it < 20; ++it) {
    RVClass x = random_rv(g, 1, 7);
    RVClass kx = x * generator_j(JVariant::Plain);
    CHECK(retract(kx, Euler::Eg).is_zero());
    CHECK(retract(kx, Euler::Eb).is_zero());
    CHECK(retract(x * generator_j(JVariant::Mu), Euler::Eg, RetractMode::Mu).is_zero());
    CHECK(retract(x * generator_j(JVariant::Mu), Euler::Eb, RetractMode::Mu).is_zero());
    CHECK(retract(x * generator_j(JVariant::MuGamma), Euler::Eg, RetractMode::MuGamma).is_zero());
    CHECK(retract(x * generator_j(JVariant::MuGamma), Euler::Eb, RetractMode::MuGamma).is_zero());
    // multiplicativity of the plain retractions
    RVClass y = random_rv(g, 1, 3);
    for (Euler w : {Euler::Eg, Euler::Eb}) {
      Retracted rx = retract(x, w), ry = retract(y, w), rxy = retract(x * y, w);
      ResPoly b = w == Euler::Eg ? ResPoly::A() : ResPoly::v();
      CHECK(rxy == Retracted::localized(rx.numerator * ry.numerator, rx.power + ry.power, w));
      (void)b;
    }
  }
}

TEST_CASE("property: pure residue classes retract to x A^-k and x v^-k") {
  testgen::Rng g(15);
  for (int it = 0; it < 20; ++it) {
    int k = static_cast<int>(g.range(0, 8));
    ResPoly x = random_homog(g, k);
    RVClass rx = RVClass::from_res(ResClass::from_poly(x));
    CHECK(retract(rx, Euler::Eg) == Retracted::localized(x, k, Euler::Eg));
    CHECK(retract(rx, Euler::Eb) == Retracted::localized(x, k, Euler::Eb));
    // and the natural projection in the mu modes
    CHECK(retract(rx, Euler::Eg, RetractMode::Mu) == Retracted::quotient(ResClass::from_poly(x), Euler::Eg, RetractMode::Mu));
  }
}

TEST_CASE("twistoid refinement") {
  SemilinearSet base = SemilinearSet::from_cells(1, {ray_from(0)});
  ResClass a = ResClass::u(), b = ResClass::v();
  auto one = refine_to_twistoids(base, {{ray_from(-1), a}});
  CHECK(one.size() == 1);
  auto two = refine_to_twistoids(base, {{interval(-1, 3), a}, {point_cell(3), b}, {ray_from(3), b}});
  CHECK(two.size() == 2);
  auto merged = refine_to_twistoids(base, {{interval(-1, 3), a}, {ray_from(1), a}});
  CHECK(merged.size() == 1);
  CHECK(merged[0].part.contains({Rat(100)}));
  CHECK_THROWS(refine_to_twistoids(base, {{interval(-1, 3), a}, {ray_from(1), b}}));
  CHECK_THROWS(refine_to_twistoids(base, {{interval(-1, 3), a}}));
}

TEST_CASE("Gamma measure preservation") {
  SemilinearSet h = SemilinearSet::from_cells(1, {ray_from(0)});
  SemilinearSet h1 = SemilinearSet::from_cells(1, {ray_from(1)});
  auto zero = [](const SemilinearSet& s) { return QPiecewiseMap::constant(s, {Rat(0)}); };
  Affine jac0(1), jac1 = Affine::konst(1, 1);
  auto id = QPiecewiseMap::identity(h);
  CHECK(check_gamma_measure_preserving(id, {h, {zero(h)}}, {h, {zero(h)}}, jac0).ok);
  auto shift = QPiecewiseMap::affine(h, {{Rat(1)}}, {Rat(1)});
  auto v = check_gamma_measure_preserving(shift, {h, {zero(h)}}, {h1, {zero(h1)}}, jac1);
  CHECK(!v.ok);
  CHECK(v.witness.has_value());
  auto om = QPiecewiseMap::affine(h, {{Rat(1)}}, {Rat(1)});
  auto om2 = QPiecewiseMap::identity(h1);
  CHECK(check_gamma_measure_preserving(shift, {h, {om}}, {h1, {om2}}, jac0).ok);
  CHECK_THROWS(check_gamma_measure_preserving(shift, {h, {om}}, {h, {om}}, jac0));
}

TEST_CASE("json output") {
  auto j = to_json(RVClass::tensor(ResPoly::u(), GammaRep::half_line()));
  CHECK(j[0]["grade"] == 1);
  CHECK(j[0]["terms"][0]["res"] == "u");
  auto r = to_json(retract(RVClass::tensor(ResPoly::u(), GammaRep::origin(1)), Euler::Eb));
  CHECK(r["power"] == 1);
  CHECK(to_json(ResClass::A())[0]["res"] == "u + v");
}
