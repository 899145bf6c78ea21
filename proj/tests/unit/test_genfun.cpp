#include <doctest.h>

#include "igusa/genfun/assemble.hpp"

using namespace igusa;
using namespace igusa::genfun;
using presburger::Box;
using presburger::LinTerm;
using presburger::PCell;
using presburger::PresburgerSet;

namespace {

Exps ex(std::initializer_list<long> v) { return Exps(v); }

LinTerm lt(std::initializer_list<long> c, long k = 0) {
  IntVec v;
  for (long x : c) v.push_back(Int(x));
  return LinTerm(v, Int(k));
}

ExponentData exps1(long lq, std::vector<long> lt_coefs) {
  std::vector<LinTerm> lts;
  for (long c : lt_coefs) lts.push_back(lt({c}));
  return ExponentData::from_lin(lt({lq}), lts);
}

PresburgerSet half_line() {
  PCell c(1);
  c.add_ge(lt({1}));
  return PresburgerSet::from_cell(c);
}

RatFun q_minus_one(size_t nv) {
  LaurentPoly p = LaurentPoly::q_power(nv, 1) - LaurentPoly::constant(nv, 1);
  return RatFun(p);
}

}  // namespace

TEST_CASE("geometric series in q^-1 T") {
  PCell c(1);
  c.add_ge(lt({1}));
  auto e = exps1(1, {1});
  RatFun f = sum_over_cell(c, e);
  CHECK(f.equals(RatFun::geometric(ex({-1, 1}))));
  CHECK(f.str() == "1/(1 - q^-1*T1)");
  // truncated sum of 200 terms at q = 3, T = 1/9
  Rat trunc = truncated_sum(half_line(), e, Box::cube(1, 0, 199), 3, {make_rat(1, 9)});
  Rat exact = f.evaluate(3, {make_rat(1, 9)});
  Rat u = make_rat(1, 27);
  Rat tail = pow_rat(u, 200) / (1 - u);
  CHECK(exact - trunc == tail);
}

TEST_CASE("single point and odd progression") {
  PCell p(1);
  p.add_eq(lt({1}, -5));
  RatFun f = sum_over_cell(p, exps1(1, {1}));
  CHECK(f.equals(RatFun::monomial(ex({-5, 5}))));
  CHECK(f.str() == "q^-5*T1^5");

  PCell odd(1);
  odd.add_ge(lt({1}));
  odd.add_cong(lt({1}, -1), 2);
  RatFun g = sum_over_cell(odd, ExponentData::from_lin(lt({1}), {}));
  CHECK(g.equals(RatFun::geometric(ex({-2})).times_monomial(ex({-1}))));
  CHECK(g.str() == "q^-1/(1 - q^-2)");
}

TEST_CASE("even and odd split equals the whole half line") {
  auto e = exps1(1, {2});
  PCell ev(1), od(1);
  ev.add_ge(lt({1}));
  ev.add_cong(lt({1}), 2);
  od.add_ge(lt({1}));
  od.add_cong(lt({1}, -1), 2);
  auto split = PresburgerSet::from_disjoint(1, {ev, od});
  RatFun a = sum_over_set(split, e), b = sum_over_set(half_line(), e);
  CHECK(a.equals(b));
  CHECK(a.str() == b.str());
  CHECK(sum_over_set(PresburgerSet::empty(1), e).is_zero());
}

TEST_CASE("evaluate and poles") {
  RatFun f = q_minus_one(2) * RatFun::geometric(ex({-1, 1}));
  CHECK(f.str() == "(q-1)/(1 - q^-1*T1)");
  CHECK(f.evaluate(3, {make_rat(1, 9)}) == make_rat(27, 13));
  CHECK(RatFun::one(2).evaluate(make_rat(7, 3), {make_rat(5, 2)}) == 1);
  CHECK_THROWS_AS(f.evaluate(3, {Rat(3)}), PoleHit);
  try {
    f.evaluate(5, {Rat(5)});
  } catch (const PoleHit& p) {
    CHECK(p.factor == ex({-1, 1}));
  }
}

TEST_CASE("divergence is reported with a direction") {
  PCell c(1);
  c.add_ge(lt({1}));
  try {
    sum_over_cell(c, exps1(-1, {}));
    FAIL("expected Divergent");
  } catch (const Divergent& d) {
    CHECK(d.direction == IntVec{Int(1)});
  }
  CHECK_THROWS_AS(sum_over_cell(PCell(1), exps1(1, {})), Divergent);
  // T-exponent decreasing along the ray: diverges for large kappa
  CHECK_THROWS_AS(sum_over_cell(c, exps1(1, {-1})), Divergent);
  // constant summand on an infinite ray
  CHECK_THROWS_AS(sum_over_cell(c, exps1(0, {})), Divergent);
  // the other orientation converges
  PCell neg(1);
  neg.add_ge(lt({-1}));
  RatFun f = sum_over_cell(neg, exps1(-1, {}));
  CHECK(f.equals(RatFun::geometric(ex({-1}))));
}

TEST_CASE("rational exponents are refined by congruence") {
  Affine h(1);
  h.coef[0] = make_rat(1, 2);
  ExponentData half(h, {});
  PCell even(1);
  even.add_ge(lt({1}));
  even.add_cong(lt({1}), 2);
  CHECK(sum_over_cell(even, half).equals(RatFun::geometric(ex({-1}))));
  PCell all(1);
  all.add_ge(lt({1}));
  try {
    sum_over_cell(all, half);
    FAIL("expected NonIntegralExponent");
  } catch (const NonIntegralExponent& e) {
    CHECK(e.point.size() == 1);
    CHECK(e.point[0] % 2 != 0);
  }
}

TEST_CASE("two dimensional cones") {
  // sum_{0 <= x <= y} q^-(x+y): = 1 / ((1 - q^-2)(1 - q^-1))
  PCell c(2);
  c.add_ge(lt({1, 0}));
  c.add_ge(lt({-1, 1}));
  RatFun f = sum_over_cell(c, ExponentData::from_lin(lt({1, 1}), {}));
  RatFun g = RatFun::geometric(ex({-2})) * RatFun::geometric(ex({-1}));
  CHECK(f.equals(g));
  // bounded triangle with polynomial dependence: sum_{0<=x<=y<=4} 1 = 15
  PCell t(2);
  t.add_ge(lt({1, 0}));
  t.add_ge(lt({-1, 1}));
  t.add_ge(lt({0, -1}, 4));
  RatFun h = sum_over_cell(t, ExponentData::from_lin(lt({0, 0}), {}));
  CHECK(h.equals(RatFun::constant(1, 15)));
  // 2x <= 3y, y <= 5 with a congruence, compared to enumeration
  PCell u(2);
  u.add_ge(lt({1, 0}));
  u.add_ge(lt({-2, 3}));
  u.add_ge(lt({0, -1}, 5));
  u.add_cong(lt({1, 1}, -1), 3);
  auto e = ExponentData::from_lin(lt({1, 2}), {lt({1, -1}, 2)});
  RatFun s = sum_over_cell(u, e);
  Rat brute = truncated_sum(PresburgerSet::from_cell(u), e, Box::cube(2, -1, 12), make_rat(5, 2), {make_rat(2, 3)});
  CHECK(s.evaluate(make_rat(5, 2), {make_rat(2, 3)}) == brute);
}

TEST_CASE("zeta_assemble for the monomial piece") {
  for (long a : {1L, 2L, 3L}) {
    ZetaPiece p{LaurentPoly::q_power(2, 1) - LaurentPoly::constant(2, 1), half_line(), exps1(1, {a})};
    AssembleStats st;
    RatFun z1 = zeta_assemble({p}, 1, &st);
    CHECK(z1.equals(q_minus_one(2) * RatFun::geometric(ex({-1, a}))));
    CHECK(st.mu == 1);
    CHECK(st.nu == 1);
    // rho = 2: the d == 0 summand is the rho = 1 sum at (q^2, T^2)
    auto parts = split_rho(p.delta, 2);
    REQUIRE(parts.size() == 2);
    RatFun even = sum_over_set(parts[0].second, scale_exponents(p.e, 2));
    CHECK(even.equals(sum_over_set(p.delta, p.e).substitute_power(2)));
    // and the full rho = 2 zeta depends only on q
    CHECK(zeta_assemble({p}, 2).equals(z1));
  }
  ZetaPiece zero{LaurentPoly(2), half_line(), exps1(1, {1})};
  CHECK(zeta_assemble({zero}, 1).is_zero());
}

TEST_CASE("zeta_assemble with a constant shifts by rho") {
  // {gamma >= 1}, Lq = gamma + 1: constants scale with rho
  PCell c(1);
  c.add_ge(lt({1}, -1));
  ZetaPiece p{LaurentPoly::constant(1, 1), PresburgerSet::from_cell(c), ExponentData::from_lin(lt({1}, 1), {})};
  // rho = 3: x >= 3, q^-(x + 3)
  RatFun z = zeta_assemble({p}, 3);
  CHECK(z.equals(RatFun::geometric(ex({-1})).times_monomial(ex({-6}))));
}

TEST_CASE("uniform families") {
  ZetaPiece p{LaurentPoly::q_power(2, 1) - LaurentPoly::constant(2, 1), half_line(), exps1(1, {2})};
  auto r1 = uniform_family({p}, {1});
  CHECK(r1.functions.size() == 1);
  CHECK(r1.certified());
  auto r12 = uniform_family({p}, {1, 2});
  CHECK(r12.certified());
  CHECK(r12.checks.size() == 1);
  auto r24 = uniform_family({p}, {2, 4});
  CHECK(r24.certified());
  CHECK(r24.checks.size() == 2);
  for (const auto& c : r24.checks) CHECK(c.rho2 == 2 * c.rho);
  // a two-dimensional piece with a congruence and several rho values
  PCell c(2);
  c.add_ge(lt({1, 0}));
  c.add_ge(lt({-1, 1}, 1));
  c.add_cong(lt({1, 1}), 2);
  ZetaPiece p2{LaurentPoly::constant(2, 1), PresburgerSet::from_cell(c), ExponentData::from_lin(lt({1, 1}), {lt({0, 1})})};
  auto r = uniform_family({p, p2}, {1, 2, 3, 4, 6});
  CHECK(r.certified());
  for (const auto& fr : r.per_rho) CHECK(fr.reproduces);
}
