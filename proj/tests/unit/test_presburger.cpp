#include <doctest.h>

#include "igusa/presburger/formula.hpp"
#include "igusa/presburger/unimodular.hpp"

using namespace igusa;
using namespace igusa::presburger;

namespace {

LinTerm v(size_t n, size_t i, long a = 1) { return LinTerm::var(n, i, Int(a)); }
LinTerm k(size_t n, long c) { return LinTerm::constant_term(n, Int(c)); }

PresburgerSet ge(size_t n, const LinTerm& t) {
  PCell c(n);
  c.add_ge(t);
  return PresburgerSet::from_cell(c);
}

PresburgerSet cong(size_t n, const LinTerm& t, long m) {
  PCell c(n);
  c.add_cong(t, Int(m));
  return PresburgerSet::from_cell(c);
}

std::vector<IntVec> pts1(std::initializer_list<long> xs) {
  std::vector<IntVec> out;
  for (long x : xs) out.push_back({Int(x)});
  return out;
}

}  // namespace

TEST_CASE("cell normalization tightens and merges") {
  PCell c(1);
  c.add_ge(v(1, 0, 2) - k(1, 3));  // 2x >= 3  ->  x >= 2
  c.add_cong(v(1, 0), Int(2));
  c.add_cong(v(1, 0) - k(1, 1), Int(3));
  c.normalize();
  REQUIRE(c.ineqs.size() == 1);
  CHECK(c.ineqs[0].constant == -2);
  REQUIRE(c.congs.size() == 1);
  CHECK(c.congs[0].m == 6);
  CHECK(c.congs[0].r == 4);
  PCell bad(1);
  bad.add_cong(v(1, 0, 2) - k(1, 1), Int(4));
  CHECK(bad.normalize().infeasible);
}

TEST_CASE("boolean ops: boundary point") {
  auto a = ge(1, v(1, 0));
  auto b = ge(1, -v(1, 0));
  auto c = a.intersect(b);
  CHECK(c.cells().size() == 1);
  CHECK(c.enumerate(Box::cube(1, -5, 5)) == pts1({0}));
}

TEST_CASE("boolean ops: complement of Z is empty") {
  CHECK(PresburgerSet::universe(1).complement().is_empty());
  CHECK(PresburgerSet::universe(3).complement().is_empty());
}

TEST_CASE("boolean ops: parity classes cover Z") {
  auto even = cong(1, v(1, 0), 2);
  auto odd = cong(1, v(1, 0) - k(1, 1), 2);
  auto u = even.unite(odd);
  Box box = Box::cube(1, -50, 50);
  CHECK(u.enumerate(box).size() == 101);
  CHECK(equivalent(u, PresburgerSet::universe(1)));
  CHECK_THROWS_AS(boolean_op(even, PresburgerSet::universe(2), "union"), std::invalid_argument);
}

TEST_CASE("eliminate: exists y. x = 2y gives even numbers") {
  PCell c(2);
  c.add_eq(v(2, 0) - v(2, 1, 2));
  auto s = PresburgerSet::from_cell(c).eliminate(1);
  CHECK(equivalent(s, cong(1, v(1, 0), 2)));
}

TEST_CASE("eliminate: exists y. 2y <= x <= 2y+1 is everything") {
  PCell c(2);
  c.add_ge(v(2, 0) - v(2, 1, 2));
  c.add_ge(v(2, 1, 2) + k(2, 1) - v(2, 0));
  auto s = PresburgerSet::from_cell(c).eliminate(1);
  CHECK(s.enumerate(Box::cube(1, -50, 50)).size() == 101);
  CHECK(equivalent(s, PresburgerSet::universe(1)));
}

TEST_CASE("eliminate: exists y >= 0. x = 3y + 1") {
  PCell c(2);
  c.add_ge(v(2, 1));
  c.add_eq(v(2, 0) - v(2, 1, 3) - k(2, 1));
  auto s = PresburgerSet::from_cell(c).eliminate(1);
  std::vector<IntVec> want;
  for (long x = 1; x <= 50; x += 3) want.push_back({Int(x)});
  CHECK(s.enumerate(Box::cube(1, 0, 50)) == want);
  PCell e(1);
  e.add_ge(v(1, 0) - k(1, 1));
  e.add_cong(v(1, 0) - k(1, 1), Int(3));
  CHECK(equivalent(s, PresburgerSet::from_cell(e)));
}

TEST_CASE("eliminate with non-unit coefficients on both sides") {
  // exists y: 3y >= x, 5y <= x + 7, y == 1 mod 2
  PCell c(2);
  c.add_ge(v(2, 1, 3) - v(2, 0));
  c.add_ge(v(2, 0) + k(2, 7) - v(2, 1, 5));
  c.add_cong(v(2, 1) - k(2, 1), Int(2));
  auto s = PresburgerSet::from_cell(c).eliminate(1);
  for (long x = -60; x <= 60; ++x) {
    bool want = false;
    for (long y = -60; y <= 60; ++y)
      if (3 * y >= x && 5 * y <= x + 7 && ((y % 2) + 2) % 2 == 1) want = true;
    CHECK(s.contains({Int(x)}) == want);
  }
}

TEST_CASE("equivalent examples") {
  auto u = cong(1, v(1, 0), 2).unite(cong(1, v(1, 0) - k(1, 1), 2));
  CHECK(equivalent(PresburgerSet::universe(1), u));
  auto a = ge(1, v(1, 0)), b = ge(1, v(1, 0) - k(1, 1));
  CHECK_FALSE(equivalent(a, b));
  auto w = distinguishing_point(a, b);
  REQUIRE(w);
  CHECK(*w == IntVec{0});
  CHECK(equivalent(PresburgerSet::empty(2), PresburgerSet::empty(2)));
}

TEST_CASE("enumerate examples") {
  PCell c(1);
  c.add_cong(v(1, 0) - k(1, 1), Int(3));
  c.add_ge(v(1, 0));
  c.add_ge(k(1, 10) - v(1, 0));
  CHECK(PresburgerSet::from_cell(c).enumerate(Box::cube(1, -20, 20)) == pts1({1, 4, 7, 10}));
  CHECK(PresburgerSet::empty(2).enumerate(Box::cube(2, -3, 3)).empty());
  PCell d(2);
  d.add_eq(v(2, 0) + v(2, 1) - k(2, 2));
  d.add_ge(v(2, 0));
  d.add_ge(v(2, 1));
  auto pts = PresburgerSet::from_cell(d).enumerate(Box::cube(2, 0, 5));
  std::vector<IntVec> want = {{0, 2}, {1, 1}, {2, 0}};
  CHECK(pts == want);
}

TEST_CASE("scale examples") {
  auto nonneg = ge(1, v(1, 0));
  PCell want(1);
  want.add_ge(v(1, 0));
  want.add_cong(v(1, 0), Int(2));
  CHECK(equivalent(nonneg.scale(2), PresburgerSet::from_cell(want)));
  CHECK(equivalent(nonneg.scale(1), nonneg));
  auto s = cong(1, v(1, 0) - k(1, 1), 3).scale(2);
  CHECK(equivalent(s, cong(1, v(1, 0) - k(1, 2), 6)));
  std::vector<IntVec> direct;
  for (long x = -30; x <= 30; ++x)
    if (((x - 2) % 6 + 6) % 6 == 0) direct.push_back({Int(x)});
  CHECK(s.enumerate(Box::cube(1, -30, 30)) == direct);
}

TEST_CASE("dilate keeps linear parts and rescales constants") {
  // {x >= 1, x == 1 mod 2} at 2  ->  {y >= 2, y == 2 mod 4}
  PCell c(1);
  c.add_ge(v(1, 0) - k(1, 1));
  c.add_cong(v(1, 0) - k(1, 1), Int(2));
  auto d = PresburgerSet::from_cell(c).dilate(2);
  PCell w(1);
  w.add_ge(v(1, 0) - k(1, 2));
  w.add_cong(v(1, 0) - k(1, 2), Int(4));
  CHECK(equivalent(d, PresburgerSet::from_cell(w)));
}

TEST_CASE("formula translation handles strictness, negation and quantifiers") {
  Affine x = Affine::var(2, 0), y = Affine::var(2, 1);
  // exists y. (x = 2y) and not (x < 0)
  Formula body = Formula::conj({Formula::atom(x - y * Rat(2), Rel::EQ), Formula::neg(Formula::atom(x, Rel::LT))});
  Formula f = Formula::exists("y", body);
  // arity 1 outside, the bound variable is appended
  Formula f1 = f;
  f1.kids[0].kids[0].term = Affine::var(2, 0) - Affine::var(2, 1) * Rat(2);
  auto s = to_set(f1, 1);
  CHECK(s.enumerate(Box::cube(1, -6, 6)) == pts1({0, 2, 4, 6}));
  // rational coefficients in inequalities are cleared
  auto h = to_set(Formula::atom(Affine::var(1, 0) * Rat(1, 2) - Affine::konst(1, Rat(3, 2)), Rel::GE), 1);
  CHECK(h.enumerate(Box::cube(1, 0, 5)) == pts1({3, 4, 5}));
}

TEST_CASE("find_point returns members") {
  PCell c(3);
  c.add_ge(v(3, 0) + v(3, 1) - v(3, 2) - k(3, 40));
  c.add_cong(v(3, 0) + v(3, 2, 2) - k(3, 3), Int(5));
  c.add_ge(k(3, 100) - v(3, 0));
  auto p = find_point(c);
  REQUIRE(p);
  CHECK(c.contains(*p));
  PCell e(2);
  e.add_eq(v(2, 0, 2) + v(2, 1, 4) - k(2, 1));
  CHECK_FALSE(find_point(e).has_value());
}

TEST_CASE("unimodularize: identity and shear are single pieces") {
  PAffineMap id{2, {AffinePiece{PCell(2), identity_mat(2), IntVec{0, 0}}}};
  auto Z2 = PresburgerSet::universe(2);
  auto r = unimodularize(id, Z2, Z2);
  REQUIRE(r.ok);
  REQUIRE(r.pieces.size() == 1);
  CHECK(r.pieces[0].matrix == identity_mat(2));
  PAffineMap shear{2, {AffinePiece{PCell(2), IntMat{{1, 1}, {0, 1}}, IntVec{0, 0}}}};
  auto s = unimodularize(shear, Z2, Z2);
  REQUIRE(s.ok);
  REQUIRE(s.pieces.size() == 1);
  CHECK(s.pieces[0].matrix == IntMat{{1, 1}, {0, 1}});
}

TEST_CASE("unimodularize: doubling map") {
  PAffineMap dbl{1, {AffinePiece{PCell(1), IntMat{{2}}, IntVec{0}}}};
  auto Z = PresburgerSet::universe(1);
  auto evens = cong(1, v(1, 0), 2);
  auto onto_z = unimodularize(dbl, Z, Z);
  CHECK_FALSE(onto_z.ok);
  REQUIRE(onto_z.witness.size() == 1);
  CHECK(mod_floor(onto_z.witness[0][0], Int(2)) == 1);
  auto onto_even = unimodularize(dbl, Z, evens);
  CHECK_FALSE(onto_even.ok);
  CHECK(onto_even.lattice_index == 2);
  CHECK_THROWS_AS(unimodularize(dbl, PresburgerSet::universe(2), Z), std::invalid_argument);
}

TEST_CASE("unimodularize: non-unimodular matrix that agrees with a unimodular one on a hyperplane") {
  // on {x = 0} the matrix [[3,1],[5,-1]] sends (0, y) to (y, -y), a bijection onto {(t, -t)}
  PCell d(2);
  d.add_eq(v(2, 0));
  PCell e(2);
  e.add_eq(v(2, 0) + v(2, 1));
  PAffineMap f{2, {AffinePiece{PCell(2), IntMat{{3, 1}, {5, -1}}, IntVec{0, 0}}}};
  auto r = unimodularize(f, PresburgerSet::from_cell(d), PresburgerSet::from_cell(e));
  REQUIRE(r.ok);
  for (const auto& p : r.pieces) {
    CHECK(abs(determinant(p.matrix)) == 1);
    for (long y = -20; y <= 20; ++y) {
      IntVec x{0, Int(y)};
      if (p.domain.contains(x)) CHECK(p.apply(x) == f.apply(x));
    }
  }
}

TEST_CASE("unimodularize: non-injective map is rejected with a colliding pair") {
  PAffineMap f{2, {AffinePiece{PCell(2), IntMat{{1, 1}, {0, 0}}, IntVec{0, 0}}}};
  auto r = unimodularize(f, PresburgerSet::universe(2), PresburgerSet::universe(2));
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness.size() == 2);
  CHECK(f.apply(r.witness[0]) == f.apply(r.witness[1]));
  CHECK(r.witness[0] != r.witness[1]);
}
