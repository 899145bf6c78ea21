// Copyright (c) 2026 The igusa authors. Licensed under the MIT license.

#include "igusa/genfun/summation.hpp"

#include <algorithm>
#include <mutex>

#include "igusa/core/intmat.hpp"
#include "igusa/semilinear/qlinear.hpp"

namespace igusa::genfun {

using presburger::LinTerm;
using presburger::PCell;

ExponentData ExponentData::from_lin(const LinTerm& lq, const std::vector<LinTerm>& lt) {
  auto conv = [](const LinTerm& t) {
    Affine a(t.arity());
    for (size_t i = 0; i < t.arity(); ++i) a.coef[i] = Rat(t.coef[i]);
    a.constant = Rat(t.constant);
    return a;
  };
  ExponentData e;
  e.Lq = conv(lq);
  for (const auto& t : lt) e.LT.push_back(conv(t));
  return e;
}

namespace {

RatVec to_rat(const IntVec& x) {
  RatVec r;
  for (const auto& v : x) r.emplace_back(v);
  return r;
}

long to_long(const Rat& r) {
  if (!is_integer(r)) throw std::logic_error("to_long: not an integer");
  Int z = r.get_num();
  if (!z.fits_slong_p()) throw std::overflow_error("exponent overflow");
  return z.get_si();
}

std::string vec_str(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

}  // namespace

Exps ExponentData::at(const IntVec& x) const {
  RatVec xr = to_rat(x);
  Exps e(nvars());
  Rat v = -Lq.eval(xr);
  if (!is_integer(v)) throw NonIntegralExponent(x);
  e[0] = to_long(v);
  for (size_t i = 0; i < LT.size(); ++i) {
    Rat w = LT[i].eval(xr);
    if (!is_integer(w)) throw NonIntegralExponent(x);
    e[i + 1] = to_long(w);
  }
  return e;
}

Divergent::Divergent(IntVec dir) : std::runtime_error("divergent sum along direction " + vec_str(dir)), direction(std::move(dir)) {}

NonIntegralExponent::NonIntegralExponent(IntVec p)
    : std::runtime_error("non-integral exponent at " + vec_str(p)), point(std::move(p)) {}

namespace {

using Mono = std::vector<unsigned>;
using RPoly = std::map<Mono, Rat>;     // rational polynomial in the current variables
using MPoly = std::map<Mono, RatFun>;  // polynomial with rational-function coefficients
using LMat = std::vector<std::vector<long>>;  // nvars x d exponent matrix

void rp_add(RPoly& p, const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

RPoly rp_mul(const RPoly& a, const RPoly& b) {
  RPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      rp_add(r, m, ca * cb);
    }
  return r;
}

RPoly rp_const(size_t nv, const Rat& c) {
  RPoly r;
  rp_add(r, Mono(nv, 0), c);
  return r;
}

// Affine form over nv variables as a polynomial.
RPoly rp_affine(const IntVec& coef, const Int& k) {
  size_t nv = coef.size();
  RPoly r;
  rp_add(r, Mono(nv, 0), Rat(k));
  for (size_t i = 0; i < nv; ++i) {
    Mono m(nv, 0);
    m[i] = 1;
    rp_add(r, m, Rat(coef[i]));
  }
  return r;
}

void mp_add(MPoly& p, const Mono& m, const RatFun& c) {
  if (c.is_zero()) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

void mp_add(MPoly& p, const MPoly& o) {
  for (const auto& [m, c] : o) mp_add(p, m, c);
}

// Substitute variable j -> images[j] (polynomials over new_nv variables).
MPoly mp_subst(const MPoly& p, const std::vector<RPoly>& images, size_t new_nv) {
  std::vector<std::vector<RPoly>> pows(images.size());
  auto power = [&](size_t j, unsigned e) -> const RPoly& {
    auto& v = pows[j];
    if (v.empty()) v.push_back(rp_const(new_nv, 1));
    while (v.size() <= e) v.push_back(rp_mul(v.back(), images[j]));
    return v[e];
  };
  MPoly r;
  for (const auto& [m, c] : p) {
    RPoly prod = rp_const(new_nv, 1);
    for (size_t j = 0; j < m.size(); ++j)
      if (m[j]) prod = rp_mul(prod, power(j, m[j]));
    for (const auto& [mm, cc] : prod) mp_add(r, mm, c * cc);
  }
  return r;
}

struct Term {
  MPoly P;
  LMat W;  // nvars rows, d columns
  Exps w;
};

struct Region {
  size_t d = 0;
  std::vector<LinTerm> cons;  // >= 0 over d vars
  IntMat M;                   // n x d, x = x0 + M t
  IntVec x0;
  std::vector<Term> terms;
};

// Merge terms with identical exponent data.
std::vector<Term> merged(std::vector<Term> ts) {
  std::map<std::pair<LMat, Exps>, MPoly> acc;
  for (auto& t : ts) mp_add(acc[{t.W, t.w}], t.P);
  std::vector<Term> out;
  for (auto& [k, p] : acc)
    if (!p.empty()) out.push_back(Term{std::move(p), k.first, k.second});
  return out;
}

// t_old = r + T t_new with T a d x d2 integer matrix.
Region change_vars(const Region& R, const IntMat& T, const IntVec& r, size_t d2) {
  Region S;
  S.d = d2;
  for (const auto& c : R.cons) {
    LinTerm n(d2);
    n.constant = c.constant + dot(c.coef, r);
    for (size_t i = 0; i < d2; ++i)
      for (size_t j = 0; j < R.d; ++j) n.coef[i] += c.coef[j] * T[j][i];
    S.cons.push_back(n);
  }
  size_t n = R.x0.size();
  S.x0 = R.x0;
  S.M = zero_mat(n, d2);
  for (size_t a = 0; a < n; ++a) {
    for (size_t j = 0; j < R.d; ++j) {
      S.x0[a] += R.M[a][j] * r[j];
      for (size_t i = 0; i < d2; ++i) S.M[a][i] += R.M[a][j] * T[j][i];
    }
  }
  std::vector<RPoly> images;
  for (size_t j = 0; j < R.d; ++j) images.push_back(rp_affine(T[j], r[j]));
  for (const auto& t : R.terms) {
    Term u;
    u.w = t.w;
    u.W.assign(t.W.size(), std::vector<long>(d2, 0));
    for (size_t v = 0; v < t.W.size(); ++v)
      for (size_t j = 0; j < R.d; ++j) {
        u.w[v] += t.W[v][j] * r[j].get_si();
        for (size_t i = 0; i < d2; ++i) u.W[v][i] += t.W[v][j] * T[j][i].get_si();
      }
    u.P = mp_subst(t.P, images, d2);
    S.terms.push_back(std::move(u));
  }
  S.terms = merged(std::move(S.terms));
  return S;
}

// Coset representatives of a congruence lattice in upper-triangular form.
std::vector<IntVec> coset_reps(const IntVec& diag) {
  std::vector<IntVec> out{IntVec(diag.size(), Int(0))};
  for (size_t i = 0; i < diag.size(); ++i) {
    std::vector<IntVec> next;
    for (const auto& v : out)
      for (Int k = 0; k < diag[i]; ++k) {
        IntVec u = v;
        u[i] = k;
        next.push_back(u);
      }
    out.swap(next);
  }
  return out;
}

// Simplify constraints; false if a constant one fails.
bool tidy(std::vector<LinTerm>& cons) {
  std::vector<LinTerm> out;
  for (auto& c : cons) {
    if (c.is_constant()) {
      if (c.constant < 0) return false;
      continue;
    }
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  cons.swap(out);
  return true;
}

bool rationally_feasible(const std::vector<LinTerm>& cons, size_t d) {
  semilinear::QSystem q(d);
  for (const auto& c : cons) {
    Affine a(d);
    for (size_t i = 0; i < d; ++i) a.coef[i] = Rat(c.coef[i]);
    a.constant = Rat(c.constant);
    q.add(a, semilinear::CKind::GE);
  }
  return q.feasible();
}

std::mutex cache_mu;

std::vector<Rat> bernoulli(size_t n) {
  std::lock_guard<std::mutex> lock(cache_mu);
  static std::vector<Rat> b{Rat(1)};
  while (b.size() <= n) {
    size_t m = b.size();
    Rat s = 0;
    Int binom = 1;  // C(m+1, j)
    for (size_t j = 0; j < m; ++j) {
      s += Rat(binom) * b[j];
      binom = binom * Int(m + 1 - j) / Int(j + 1);
    }
    b.push_back(-s / Rat(Int(m + 1)));
  }
  return b;
}

// Coefficients of S_i(t) = sum_{tau=0}^{t-1} tau^i, index = power of t.
std::vector<Rat> faulhaber(unsigned i) {
  const auto B = bernoulli(i);
  std::vector<Rat> c(i + 2, Rat(0));
  Int binom = 1;
  for (unsigned j = 0; j <= i; ++j) {
    c[i + 1 - j] = Rat(binom) * B[j] / Rat(Int(i + 1));
    binom = binom * Int(i + 1 - j) / Int(j + 1);
  }
  return c;
}

// Numerator of sum_{j>=0} j^i u^j = N_i(u) / (1-u)^{i+1}.
std::vector<Int> eulerian(unsigned i) {
  std::lock_guard<std::mutex> lock(cache_mu);
  static std::vector<std::vector<Int>> cache{{Int(1)}};
  while (cache.size() <= i) {
    const auto& p = cache.back();
    unsigned k = cache.size();  // computing N_k from N_{k-1}
    // N_k = u (N'(1-u) + k N)
    std::vector<Int> d(p.size() + 1, Int(0));
    for (size_t a = 1; a < p.size(); ++a) {
      d[a - 1] += p[a] * Int(a);
      d[a] -= p[a] * Int(a);
    }
    for (size_t a = 0; a < p.size(); ++a) d[a] += p[a] * Int(k);
    std::vector<Int> n(d.size() + 1, Int(0));
    for (size_t a = 0; a < d.size(); ++a) n[a + 1] = d[a];
    while (n.size() > 1 && n.back() == 0) n.pop_back();
    cache.push_back(n);
  }
  return cache[i];
}

RatFun geometric_moment(unsigned i, const Exps& c) {
  size_t nv = c.size();
  LaurentPoly num(nv);
  const auto N = eulerian(i);
  for (size_t k = 0; k < N.size(); ++k) {
    Exps e = c;
    for (long& v : e) v *= long(k);
    num.add_term(e, Rat(N[k]));
  }
  RatFun r(num);
  r.add_pole(c, int(i) + 1);
  return r;
}

// Split P (over d vars, last var t) into coefficients of powers of t after t -> a(s) + t.
// Returned polynomials live over d vars with the t slot zero.
std::map<unsigned, MPoly> shift_expand(const MPoly& P, size_t d, const LinTerm& a) {
  std::vector<RPoly> images;
  for (size_t j = 0; j + 1 < d; ++j) {
    RPoly v;
    Mono m(d, 0);
    m[j] = 1;
    rp_add(v, m, 1);
    images.push_back(v);
  }
  IntVec ac = a.coef;
  ac.push_back(1);
  images.push_back(rp_affine(ac, a.constant));
  MPoly S = mp_subst(P, images, d);
  std::map<unsigned, MPoly> out;
  for (const auto& [m, c] : S) {
    Mono mm = m;
    unsigned e = mm.back();
    mm.back() = 0;
    mp_add(out[e], mm, c);
  }
  return out;
}

Mono drop_last(const Mono& m) { return Mono(m.begin(), m.end() - 1); }

MPoly mp_drop_last(const MPoly& p) {
  MPoly r;
  for (const auto& [m, c] : p) mp_add(r, drop_last(m), c);
  return r;
}

// sum_{t >= a} P(s,t) z^{W(s,t) + w} as terms over d-1 vars (requires c != 0).
std::vector<Term> tail_sum(const Term& T, size_t d, const LinTerm& a, const Exps& c) {
  auto parts = shift_expand(T.P, d, a);
  Term out;
  out.W = T.W;
  out.w = T.w;
  for (size_t v = 0; v < c.size(); ++v) {
    out.W[v].pop_back();
    for (size_t j = 0; j + 1 < d; ++j) out.W[v][j] += c[v] * a.coef[j].get_si();
    out.w[v] += c[v] * a.constant.get_si();
  }
  for (const auto& [i, poly] : parts) {
    RatFun g = geometric_moment(i, c);
    for (const auto& [m, coef] : poly) mp_add(out.P, drop_last(m), coef * g);
  }
  return {out};
}

// sum_{a <= t <= b} P with c == 0, via Faulhaber.
Term poly_sum(const Term& T, size_t d, const LinTerm& a, const LinTerm& b) {
  // P = sum_i p_i(s) t^i  ->  sum_i p_i(s) (S_i(b+1) - S_i(a))
  std::map<unsigned, MPoly> byt;
  for (const auto& [m, c] : T.P) {
    Mono mm = m;
    unsigned e = mm.back();
    mm.back() = 0;
    mp_add(byt[e], mm, c);
  }
  LinTerm b1 = b;
  b1.constant += 1;
  RPoly A = rp_affine(a.coef, a.constant), B = rp_affine(b1.coef, b1.constant);
  Term out;
  out.W = T.W;
  for (auto& row : out.W) row.pop_back();
  out.w = T.w;
  size_t k = d - 1;
  for (const auto& [i, p] : byt) {
    auto S = faulhaber(i);
    RPoly diff;
    RPoly pa = rp_const(k, 1), pb = rp_const(k, 1);
    for (size_t e = 0; e < S.size(); ++e) {
      if (S[e] != 0) {
        for (const auto& [m, c] : pb) rp_add(diff, m, S[e] * c);
        for (const auto& [m, c] : pa) rp_add(diff, m, -S[e] * c);
      }
      pa = rp_mul(pa, A);
      pb = rp_mul(pb, B);
    }
    MPoly pp = mp_drop_last(p);
    for (const auto& [m1, c1] : pp)
      for (const auto& [m2, c2] : diff) {
        Mono m(k);
        for (size_t j = 0; j < k; ++j) m[j] = m1[j] + m2[j];
        mp_add(out.P, m, c1 * c2);
      }
  }
  return out;
}

IntVec column(const IntMat& M, size_t k, int sign) {
  IntVec v;
  for (const auto& row : M) v.push_back(row[k] * sign);
  return v;
}

Term reflect_last(const Term& T) {
  Term u = T;
  u.P.clear();
  for (const auto& [m, c] : T.P) mp_add(u.P, m, m.back() % 2 ? -c : c);
  for (auto& row : u.W) row.back() = -row.back();
  return u;
}

RatFun sum_region(const Region& R, size_t nvars);

RatFun sum_region_split(Region R, size_t nvars) {
  size_t d = R.d, k = d - 1;
  if (!tidy(R.cons)) return RatFun::zero(nvars);
  if (R.terms.empty()) return RatFun::zero(nvars);
  // Residue split so that every bound on t_k becomes integral-linear in the outer variables.
  if (k > 0) {
    IntMat C;
    IntVec mods;
    for (const auto& c : R.cons) {
      Int g = abs(c.coef[k]);
      if (g <= 1) continue;
      bool ok = true;
      for (size_t j = 0; j < k; ++j)
        if (c.coef[j] % g != 0) ok = false;
      if (ok) continue;
      C.push_back(IntVec(c.coef.begin(), c.coef.begin() + k));
      mods.push_back(g);
    }
    if (!C.empty()) {
      auto L = congruence_lattice(C, mods, k);
      IntVec diag = L.diag();
      IntMat T = zero_mat(d, d);
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) T[j][i] = L.basis[i][j];
      T[k][k] = 1;
      RatFun total = RatFun::zero(nvars);
      for (const auto& rep : coset_reps(diag)) {
        IntVec r = rep;
        r.push_back(0);
        Region S = change_vars(R, T, r, d);
        total += sum_region(S, nvars);
      }
      return total;
    }
  }
  return sum_region(R, nvars);
}

RatFun sum_region(const Region& R0, size_t nvars) {
  Region R = R0;
  if (!tidy(R.cons)) return RatFun::zero(nvars);
  if (R.terms.empty()) return RatFun::zero(nvars);
  size_t d = R.d;
  if (d == 0) {
    RatFun total = RatFun::zero(nvars);
    for (const auto& t : R.terms) {
      auto it = t.P.find(Mono{});
      if (it != t.P.end()) total += it->second.times_monomial(t.w);
    }
    return total;
  }
  size_t k = d - 1;
  // Is a split needed?
  for (const auto& c : R.cons) {
    Int g = abs(c.coef[k]);
    if (g <= 1 || k == 0) continue;
    for (size_t j = 0; j < k; ++j)
      if (c.coef[j] % g != 0) return sum_region_split(R, nvars);
  }
  std::vector<LinTerm> outer, lows, ups;
  for (const auto& c : R.cons) {
    Int g = c.coef[k];
    LinTerm rest = c;
    rest.coef.pop_back();
    if (g == 0) {
      outer.push_back(rest);
    } else if (g > 0) {
      // t >= ceil(-rest / g)
      LinTerm L(k);
      for (size_t j = 0; j < k; ++j) L.coef[j] = -rest.coef[j] / g;
      L.constant = ceil_div(-rest.constant, g);
      if (std::find(lows.begin(), lows.end(), L) == lows.end()) lows.push_back(L);
    } else {
      Int h = -g;
      LinTerm U(k);
      for (size_t j = 0; j < k; ++j) U.coef[j] = rest.coef[j] / h;
      U.constant = floor_div(rest.constant, h);
      if (std::find(ups.begin(), ups.end(), U) == ups.end()) ups.push_back(U);
    }
  }
  Region base;
  base.d = k;
  base.x0 = R.x0;
  base.M = R.M;
  for (auto& row : base.M) row.pop_back();

  if (lows.empty() && ups.empty()) throw Divergent(column(R.M, k, 1));

  // One branch per choice of active bounds; ties go to the smallest index.
  auto add_ties = [](std::vector<LinTerm>& cons, const std::vector<LinTerm>& bs, size_t i, int sign) {
    for (size_t j = 0; j < bs.size(); ++j) {
      if (j == i) continue;
      LinTerm diff = (bs[i] - bs[j]) * Int(sign);  // lower: L_i - L_j; upper: U_j - U_i
      if (j < i) diff.constant -= 1;
      cons.push_back(diff);
    }
  };
  RatFun total = RatFun::zero(nvars);
  size_t nl = std::max<size_t>(lows.size(), 1), nu = std::max<size_t>(ups.size(), 1);
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nu; ++j) {
      Region S = base;
      S.cons = outer;
      if (!lows.empty()) add_ties(S.cons, lows, i, 1);
      if (!ups.empty()) add_ties(S.cons, ups, j, -1);
      if (!lows.empty() && !ups.empty()) S.cons.push_back(ups[j] - lows[i]);
      if (!tidy(S.cons)) continue;
      if ((lows.size() > 1 || ups.size() > 1) && !rationally_feasible(S.cons, k)) continue;
      std::vector<Term> nt;
      for (const auto& T : R.terms) {
        Exps c(nvars);
        bool zero = true;
        for (size_t v = 0; v < nvars; ++v) {
          c[v] = T.W[v][k];
          if (c[v]) zero = false;
        }
        if (zero) {
          if (lows.empty()) throw Divergent(column(R.M, k, -1));
          if (ups.empty()) throw Divergent(column(R.M, k, 1));
          nt.push_back(poly_sum(T, d, lows[i], ups[j]));
          continue;
        }
        if (lows.empty()) {
          // sum_{t <= b} = sum_{t' >= -b} after t = -t'
          Exps nc = c;
          for (long& v : nc) v = -v;
          if (!is_small(nc)) throw Divergent(column(R.M, k, -1));
          for (auto& x : tail_sum(reflect_last(T), d, -ups[j], nc)) nt.push_back(std::move(x));
          continue;
        }
        if (ups.empty() && !is_small(c)) throw Divergent(column(R.M, k, 1));
        for (auto& x : tail_sum(T, d, lows[i], c)) nt.push_back(std::move(x));
        if (!ups.empty()) {
          LinTerm b1 = ups[j];
          b1.constant += 1;
          for (auto& x : tail_sum(T, d, b1, c)) {
            for (auto& [m, coef] : x.P) coef = -coef;
            nt.push_back(std::move(x));
          }
        }
      }
      S.terms = merged(std::move(nt));
      total += sum_region_split(S, nvars);
    }
  return total;
}

}  // namespace

RatFun sum_over_cell(const PCell& cell0, const ExponentData& e) {
  size_t n = cell0.arity, nvars = e.nvars();
  if (e.Lq.arity() != n) throw std::invalid_argument("sum_over_cell: exponent arity mismatch");
  for (const auto& t : e.LT)
    if (t.arity() != n) throw std::invalid_argument("sum_over_cell: exponent arity mismatch");
  PCell cell = cell0.normalized();
  if (cell.infeasible) return RatFun::zero(nvars);

  // Lattice parametrisation x = x0 + B t of equalities and congruences.
  auto eqs = cell.equalities();
  size_t nc = cell.congs.size();
  IntMat A;
  IntVec rhs;
  for (const auto& q : eqs) {
    IntVec row = q.coef;
    row.resize(n + nc, Int(0));
    A.push_back(row);
    rhs.push_back(-q.constant);
  }
  for (size_t j = 0; j < nc; ++j) {
    IntVec row = cell.congs[j].coef;
    row.resize(n + nc, Int(0));
    row[n + j] = -cell.congs[j].m;
    A.push_back(row);
    rhs.push_back(cell.congs[j].r);
  }
  Region R;
  R.x0 = IntVec(n, Int(0));
  IntMat basis;
  if (A.empty()) {
    basis = identity_mat(n);
  } else {
    auto y = solve_integer(A, rhs, n + nc);
    if (!y) return RatFun::zero(nvars);
    for (size_t i = 0; i < n; ++i) R.x0[i] = (*y)[i];
    IntMat gens;
    for (const auto& kv : kernel_basis(A, n + nc)) gens.push_back(IntVec(kv.begin(), kv.begin() + n));
    if (!gens.empty()) {
      auto ech = row_echelon(gens, n);
      for (const auto& row : ech.H) {
        bool nz = false;
        for (const auto& v : row)
          if (v != 0) nz = true;
        if (nz) basis.push_back(row);
      }
    }
  }
  size_t d = basis.size();
  R.d = d;
  R.M = zero_mat(n, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t a = 0; a < n; ++a) R.M[a][i] = basis[i][a];
  for (const auto& c : cell.ineqs) {
    LinTerm t(d);
    t.constant = c.eval(R.x0);
    for (size_t i = 0; i < d; ++i) t.coef[i] = dot(c.coef, basis[i]);
    R.cons.push_back(t);
  }
  if (!tidy(R.cons)) return RatFun::zero(nvars);

  // Exponent forms in t, possibly rational.
  std::vector<Affine> forms{-e.Lq};
  for (const auto& t : e.LT) forms.push_back(t);
  RatVec x0r = to_rat(R.x0);
  std::vector<RatVec> Wr(nvars, RatVec(d));
  RatVec wr(nvars);
  Int den = 1;
  for (size_t v = 0; v < nvars; ++v) {
    wr[v] = forms[v].eval(x0r);
    den = lcm(den, Int(wr[v].get_den()));
    for (size_t i = 0; i < d; ++i) {
      Rat s = 0;
      for (size_t a = 0; a < n; ++a) s += forms[v].coef[a] * Rat(basis[i][a]);
      Wr[v][i] = s;
      den = lcm(den, Int(s.get_den()));
    }
  }
  Term t0;
  t0.P[Mono(d, 0)] = RatFun::one(nvars);
  t0.W.assign(nvars, std::vector<long>(d, 0));
  t0.w.assign(nvars, 0);
  if (den == 1) {
    for (size_t v = 0; v < nvars; ++v) {
      t0.w[v] = to_long(wr[v]);
      for (size_t i = 0; i < d; ++i) t0.W[v][i] = to_long(Wr[v][i]);
    }
    R.terms.push_back(t0);
    return sum_region(R, nvars).canonical();
  }

  // Refine by the lattice of t on which all exponents are integral.
  IntMat C;
  IntVec mods;
  for (size_t v = 0; v < nvars; ++v) {
    IntVec row(d);
    for (size_t i = 0; i < d; ++i) row[i] = Int(Wr[v][i] * Rat(den));
    C.push_back(row);
    mods.push_back(den);
  }
  auto L = congruence_lattice(C, mods, d);
  IntMat T = zero_mat(d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) T[j][i] = L.basis[i][j];
  RatFun total = RatFun::zero(nvars);
  for (const auto& r : coset_reps(L.diag())) {
    Region S;
    S.d = d;
    S.cons = R.cons;
    S.M = R.M;
    S.x0 = R.x0;
    Region S2 = change_vars(S, T, r, d);
    IntVec x = S2.x0;  // the point with t = 0 in the new coordinates (exponent data is linear)
    RatVec xr = to_rat(x);
    bool integral = true;
    for (size_t v = 0; v < nvars; ++v)
      if (!is_integer(forms[v].eval(xr))) integral = false;
    if (!integral) {
      PCell probe(d);
      for (const auto& c : S2.cons) probe.add_ge(c);
      auto pt = presburger::find_point(probe);
      if (!pt) continue;
      IntVec bad = S2.x0;
      IntVec off = mat_vec(S2.M, *pt);
      for (size_t a = 0; a < n; ++a) bad[a] += off[a];
      throw NonIntegralExponent(bad);
    }
    Term u;
    u.P[Mono(d, 0)] = RatFun::one(nvars);
    u.W.assign(nvars, std::vector<long>(d, 0));
    u.w.assign(nvars, 0);
    for (size_t v = 0; v < nvars; ++v) {
      u.w[v] = to_long(forms[v].eval(xr));
      for (size_t i = 0; i < d; ++i) {
        Rat s = 0;
        for (size_t a = 0; a < n; ++a) s += forms[v].coef[a] * Rat(S2.M[a][i]);
        u.W[v][i] = to_long(s);
      }
    }
    S2.terms.push_back(u);
    total += sum_region(S2, nvars);
  }
  return total.canonical();
}

RatFun sum_over_set(const presburger::PresburgerSet& s, const ExponentData& e) {
  RatFun total = RatFun::zero(e.nvars());
  for (const auto& c : s.cells()) total += sum_over_cell(c, e);
  return total.canonical();
}

Rat truncated_sum(const presburger::PresburgerSet& s, const ExponentData& e, const presburger::Box& box,
                  const Rat& q, const RatVec& t) {
  Rat total = 0;
  for (const auto& x : s.enumerate(box)) total += eval_monomial(e.at(x), q, t);
  return total;
}

}  // namespace igusa::genfun
