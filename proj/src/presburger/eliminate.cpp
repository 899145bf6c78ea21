// Cooper-style elimination with disjoint output, and the cell decision procedure built on it.
#include <algorithm>
#include <stdexcept>

#include "igusa/presburger/cell.hpp"

namespace igusa::presburger {

namespace {

// y' == T (mod M) together with side conditions on the other variables.
struct Combined {
  LinTerm T;
  Int M = 1;
  std::vector<Congruence> side;
};

void combine_into(Combined& acc, const LinTerm& T2, const Int& m2) {
  if (acc.M == 1) {
    acc.T = T2;
    acc.M = m2;
    return;
  }
  Int a, b;
  Int g = ext_gcd(acc.M, m2, a, b);
  LinTerm diff = T2 - acc.T;
  if (g > 1) acc.side.push_back(Congruence::from_term(diff, g));
  // T = T1 + (m1/g) * a * (T2 - T1)  (mod lcm)
  Int f = acc.M / g * a;
  Int L = acc.M / g * m2;
  LinTerm T = acc.T + diff * f;
  for (auto& c : T.coef) c = mod_floor(c, L);
  T.constant = mod_floor(T.constant, L);
  acc.T = T;
  acc.M = L;
}

Int sign_of(const Int& a) { return a > 0 ? Int(1) : Int(-1); }

}  // namespace

namespace {

// Visits the disjuncts of the projection; the visitor returns true to stop early.
template <class Visit>
void visit_projection(const PCell& c0, size_t k, Visit&& visit) {
  PCell c = c0.normalized();
  if (k >= c.arity) throw std::out_of_range("eliminate_var: variable index");
  if (c.infeasible) return;
  if (!c.mentions(k)) {
    visit(c.drop_var(k));
    return;
  }
  const size_t n = c.arity;

  // equality substitution when available
  {
    const LinTerm* best = nullptr;
    const auto eqs = c.equalities();
    for (const auto& e : eqs) {
      if (e.coef[k] == 0) continue;
      if (!best || abs(e.coef[k]) < abs(best->coef[k])) best = &e;
    }
    if (best) {
      LinTerm E = *best;
      if (E.coef[k] < 0) E = -E;
      Int alpha = E.coef[k];
      LinTerm s = E;
      s.coef[k] = 0;  // alpha*y + s == 0
      PCell r(n);
      if (alpha > 1) r.add_cong(s, alpha);
      for (const auto& t : c.ineqs) {
        Int a = t.coef[k];
        LinTerm u = t;
        u.coef[k] = 0;
        r.add_ge(u * alpha - s * a);
      }
      for (const auto& cg : c.congs) {
        LinTerm t = cg.term();
        Int b = t.coef[k];
        t.coef[k] = 0;
        r.add_cong(t * alpha - s * b, cg.m * alpha);
      }
      r.normalize();
      if (!r.infeasible) visit(r.drop_var(k));
      return;
    }
  }

  Int L = 1;
  for (const auto& t : c.ineqs)
    if (t.coef[k] != 0) L = lcm(L, t.coef[k]);
  for (const auto& cg : c.congs)
    if (cg.coef[k] != 0) L = lcm(L, cg.coef[k]);
  L = abs(L);

  PCell base(n);
  std::vector<LinTerm> lowers, uppers;  // y' >= l, y' <= u
  for (const auto& t : c.ineqs) {
    Int a = t.coef[k];
    if (a == 0) {
      base.add_ge(t);
      continue;
    }
    LinTerm s = t;
    s.coef[k] = 0;
    s = s * (L / abs(a));
    if (a > 0) lowers.push_back(-s);
    else uppers.push_back(s);
  }
  Combined comb;
  comb.T = LinTerm(n);
  for (const auto& cg : c.congs) {
    LinTerm t = cg.term();
    Int b = t.coef[k];
    if (b == 0) {
      base.add_cong(cg);
      continue;
    }
    Int mult = L / abs(b);
    t.coef[k] = 0;
    // sign(b) y' + t*mult == 0 mod m*mult
    LinTerm T = t * (-sign_of(b) * mult);
    combine_into(comb, T, cg.m * mult);
  }
  if (L > 1) combine_into(comb, LinTerm(n), L);
  for (const auto& sc : comb.side) base.add_cong(sc);
  base.normalize();
  if (base.infeasible) return;

  auto emit = [&](PCell cell) {
    cell.normalize();
    if (!cell.infeasible) return visit(cell.drop_var(k));
    return false;
  };

  if (lowers.empty() && uppers.empty()) {
    emit(base);
    return;
  }
  bool use_lower = !lowers.empty() && (uppers.empty() || lowers.size() <= uppers.size());
  const auto& pivots = use_lower ? lowers : uppers;
  const auto& others = use_lower ? uppers : lowers;
  for (size_t i = 0; i < pivots.size(); ++i) {
    PCell ci = base;
    for (size_t j = 0; j < pivots.size(); ++j) {
      if (j == i) continue;
      // lower side: l_i is the max (strict against earlier); upper side: u_i is the min
      LinTerm d = use_lower ? pivots[i] - pivots[j] : pivots[j] - pivots[i];
      if (j < i) d.constant -= 1;
      ci.add_ge(d);
    }
    ci.normalize();
    if (ci.infeasible) continue;
    for (Int r = 0; r < comb.M; ++r) {
      PCell cr = ci;
      // candidate y* = l_i + r  (or u_i - r)
      LinTerm ystar = pivots[i];
      ystar.constant += use_lower ? r : -r;
      if (comb.M > 1) cr.add_cong(ystar - comb.T, comb.M);
      for (const auto& o : others) cr.add_ge(use_lower ? o - ystar : ystar - o);
      if (emit(cr)) return;
    }
  }
}

}  // namespace

std::vector<PCell> eliminate_var(const PCell& c, size_t k) {
  std::vector<PCell> out;
  visit_projection(c, k, [&](PCell d) {
    out.push_back(std::move(d));
    return false;
  });
  return out;
}

namespace {

// Values of y = x_k satisfying c once the other coordinates are fixed.
std::optional<Int> solve_for(const PCell& c, size_t k, const IntVec& rest) {
  IntVec x = rest;
  x.insert(x.begin() + static_cast<long>(k), Int(0));
  std::optional<Int> lo, hi;
  for (const auto& t : c.ineqs) {
    Int a = t.coef[k];
    Int s = t.eval(x);
    if (a == 0) {
      if (s < 0) return std::nullopt;
      continue;
    }
    if (a > 0) {
      Int b = ceil_div(-s, a);
      if (!lo || b > *lo) lo = b;
    } else {
      Int b = floor_div(s, -a);
      if (!hi || b < *hi) hi = b;
    }
  }
  Int r = 0, M = 1;
  for (const auto& cg : c.congs) {
    Int b = mod_floor(cg.coef[k], cg.m);
    Int rhs = mod_floor(-cg.term().eval(x), cg.m);  // b*y == rhs mod m
    Int g = gcd(b, cg.m);
    if (mod_floor(rhs, g) != 0) return std::nullopt;
    Int m = cg.m / g;
    Int y0 = 0;
    if (m > 1) {
      Int inv, tmp;
      ext_gcd(b / g, m, inv, tmp);
      y0 = mod_floor(rhs / g * inv, m);
    }
    Int nr, nm;
    if (!crt(r, M, y0, m, nr, nm)) return std::nullopt;
    r = nr;
    M = nm;
  }
  Int y;
  if (lo) {
    y = *lo + mod_floor(r - *lo, M);
    if (hi && y > *hi) return std::nullopt;
  } else if (hi) {
    y = *hi - mod_floor(*hi - r, M);
  } else {
    y = r;
  }
  return y;
}

size_t pick_var(const PCell& c) {
  size_t best = 0;
  Int best_cost = -1;
  auto eqs = c.equalities();
  for (size_t k = 0; k < c.arity; ++k) {
    if (!c.mentions(k)) return k;
    Int cost;
    bool has_eq = false;
    for (const auto& e : eqs)
      if (e.coef[k] != 0) has_eq = true;
    if (has_eq) {
      cost = 0;
    } else {
      size_t nl = 0, nu = 0;
      Int L = 1;
      for (const auto& t : c.ineqs) {
        if (t.coef[k] > 0) ++nl;
        if (t.coef[k] < 0) ++nu;
        if (t.coef[k] != 0) L = lcm(L, t.coef[k]);
      }
      for (const auto& cg : c.congs)
        if (cg.coef[k] != 0) L = lcm(L, cg.coef[k] * cg.m);
      size_t side = (nl == 0 || nu == 0) ? 1 : std::min(nl, nu);
      cost = Int(static_cast<unsigned long>(side)) * abs(L) + 1;
      if (nl == 0 || nu == 0) cost = 1;  // unbounded side: projection is cheap
    }
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = k;
    }
  }
  return best;
}

bool small_box_search(const PCell& c, long radius, IntVec& out) {
  size_t n = c.arity;
  IntVec x(n, Int(-radius));
  while (true) {
    if (c.contains(x)) {
      out = x;
      return true;
    }
    size_t i = 0;
    while (i < n) {
      if (x[i] < radius) {
        x[i] += 1;
        break;
      }
      x[i] = -radius;
      ++i;
    }
    if (i == n) return false;
  }
}

}  // namespace

std::optional<IntVec> find_point(const PCell& c0) {
  PCell c = c0.normalized();
  if (c.infeasible) return std::nullopt;
  if (c.arity == 0) return IntVec{};
  IntVec quick;
  if (c.arity <= 3 && small_box_search(c, 2, quick)) return quick;
  size_t k = pick_var(c);
  std::optional<IntVec> found;
  visit_projection(c, k, [&](const PCell& d) {
    auto rest = find_point(d);
    if (!rest) return false;
    auto y = solve_for(c, k, *rest);
    if (!y) throw std::logic_error("find_point: projection point does not lift");
    IntVec x = *rest;
    x.insert(x.begin() + static_cast<long>(k), *y);
    found = x;
    return true;
  });
  return found;
}

bool cell_is_empty(const PCell& c) { return !find_point(c).has_value(); }

PCell remove_redundant(const PCell& c0) {
  PCell c = c0.normalized();
  if (c.infeasible) return c;
  for (size_t i = 0; i < c.ineqs.size();) {
    PCell rest = c;
    rest.ineqs.erase(rest.ineqs.begin() + static_cast<long>(i));
    PCell probe = rest;
    LinTerm neg = -c.ineqs[i];
    neg.constant -= 1;
    probe.add_ge(neg);
    if (cell_is_empty(probe)) c = rest;
    else ++i;
  }
  for (size_t i = 0; i < c.congs.size();) {
    PCell rest = c;
    rest.congs.erase(rest.congs.begin() + static_cast<long>(i));
    bool implied = true;
    const auto& cg = c.congs[i];
    for (Int r = 0; r < cg.m && implied; ++r) {
      if (r == cg.r) continue;
      PCell probe = rest;
      probe.add_cong(Congruence{cg.coef, r, cg.m});
      if (!cell_is_empty(probe)) implied = false;
    }
    if (implied) c = rest;
    else ++i;
  }
  return c.normalize();
}

}  // namespace igusa::presburger
