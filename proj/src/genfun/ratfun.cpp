#include "igusa/genfun/ratfun.hpp"

#include <numeric>

namespace igusa::genfun {

PoleHit::PoleHit(Exps f) : std::runtime_error("pole: factor (1 - " + monomial_str(f) + ") vanishes"), factor(std::move(f)) {}

LaurentPoly one_minus(const Exps& e) {
  LaurentPoly p = LaurentPoly::constant(e.size(), 1);
  p.add_term(e, -1);
  return p;
}

bool is_small(const Exps& e) {
  bool nonzero = false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0) nonzero = true;
    if (i == 0 ? e[i] > 0 : e[i] < 0) return false;
  }
  return nonzero;
}

namespace {

Exps negated(Exps e) {
  for (long& v : e) v = -v;
  return e;
}

bool is_zero_exps(const Exps& e) {
  for (long v : e)
    if (v) return false;
  return true;
}

// Factor orientation: small if possible, else first nonzero entry negative.
bool oriented(const Exps& e) {
  if (is_small(e)) return true;
  if (is_small(negated(e))) return false;
  for (long v : e)
    if (v != 0) return v < 0;
  return true;
}

Exps padded_exps(Exps e, size_t n) {
  e.resize(std::max(n, e.size()), 0);
  return e;
}

long floor_div_l(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long exps_gcd(const Exps& e) {
  long g = 0;
  for (long v : e) g = std::gcd(g, v < 0 ? -v : v);
  return g;
}

// f == j * e for some integer j >= 1?
std::optional<long> multiple_of(const Exps& f, const Exps& e) {
  size_t i = 0;
  while (i < e.size() && e[i] == 0) ++i;
  if (i == e.size() || f[i] % e[i] != 0) return std::nullopt;
  long j = f[i] / e[i];
  if (j < 1) return std::nullopt;
  for (size_t k = 0; k < e.size(); ++k)
    if (f[k] != j * e[k]) return std::nullopt;
  return j;
}

}  // namespace

std::optional<LaurentPoly> divide_one_minus(const LaurentPoly& p, const Exps& e0) {
  Exps e = padded_exps(e0, p.nvars());
  size_t i = 0;
  while (i < e.size() && e[i] == 0) ++i;
  if (i == e.size()) return std::nullopt;
  // chain key -> (position -> coefficient)
  std::map<Exps, std::map<long, Rat>> chains;
  for (const auto& [a, c] : p.terms()) {
    long k = floor_div_l(a[i], e[i]);
    Exps base = a;
    for (size_t j = 0; j < e.size(); ++j) base[j] -= k * e[j];
    chains[base][k] += c;
  }
  LaurentPoly q(p.nvars());
  for (const auto& [base, ch] : chains) {
    Rat run = 0;
    long prev = 0;
    bool first = true;
    for (const auto& [k, c] : ch) {
      if (!first && run != 0) {
        for (long j = prev; j < k; ++j) {
          Exps x = base;
          for (size_t t = 0; t < e.size(); ++t) x[t] += j * e[t];
          q.add_term(x, run);
        }
      }
      run += c;
      prev = k;
      first = false;
    }
    if (run != 0) return std::nullopt;
  }
  return q;
}

RatFun RatFun::geometric(const Exps& e, int mult) {
  RatFun r = one(e.size());
  r.add_pole(e, mult);
  return r;
}

void RatFun::add_pole(const Exps& e0, int mult) {
  if (mult <= 0) return;
  if (is_zero_exps(e0)) throw std::invalid_argument("RatFun: factor 1 - 1 is zero");
  if (e0.size() > nvars()) *this = padded(e0.size());
  Exps e = padded_exps(e0, nvars());
  if (!oriented(e)) {
    // 1/(1 - z^e) = -z^-e / (1 - z^-e)
    e = negated(e);
    Exps shift = e;
    for (long& v : shift) v *= mult;
    num_ = num_.shifted(shift) * Rat(mult % 2 ? -1 : 1);
  }
  den_[e] += mult;
}

RatFun RatFun::padded(size_t n) const {
  if (n <= nvars()) return *this;
  RatFun r(num_.padded(n));
  for (const auto& [e, m] : den_) r.den_[padded_exps(e, n)] = m;
  return r;
}

LaurentPoly RatFun::expanded_denominator() const {
  LaurentPoly d = LaurentPoly::constant(nvars(), 1);
  for (const auto& [e, m] : den_) d = d * one_minus(e).pow(m);
  return d;
}

namespace {

// Rewrite a's denominator so that it divides the common denominator with b as tightly as the
// simple multiple rule allows: a factor (1 - z^e)^m of a becomes (1 - z^{je})^m when b has it.
void lift_factors(LaurentPoly& num, std::map<Exps, int>& den, const std::map<Exps, int>& other) {
  std::map<Exps, int> out;
  for (const auto& [e, m] : den) {
    if (other.count(e)) {
      out[e] += m;
      continue;
    }
    bool done = false;
    for (const auto& [f, n] : other) {
      if (n < m) continue;
      auto j = multiple_of(f, e);
      if (!j || *j < 2) continue;
      // (1 - z^{je}) = (1 - z^e)(1 + z^e + ... + z^{(j-1)e})
      LaurentPoly s(num.nvars());
      for (long k = 0; k < *j; ++k) {
        Exps x = e;
        for (long& v : x) v *= k;
        s.add_term(x, 1);
      }
      num = num * s.pow(m);
      out[f] += m;
      done = true;
      break;
    }
    if (!done) out[e] += m;
  }
  den = std::move(out);
}

}  // namespace

RatFun RatFun::operator+(const RatFun& o0) const {
  size_t n = std::max(nvars(), o0.nvars());
  RatFun a = padded(n), b = o0.padded(n);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  lift_factors(a.num_, a.den_, b.den_);
  lift_factors(b.num_, b.den_, a.den_);
  std::map<Exps, int> common = a.den_;
  for (const auto& [e, m] : b.den_) common[e] = std::max(common[e], m);
  LaurentPoly na = a.num_, nb = b.num_;
  for (const auto& [e, m] : common) {
    auto ia = a.den_.find(e);
    int ma = ia == a.den_.end() ? 0 : ia->second;
    auto ib = b.den_.find(e);
    int mb = ib == b.den_.end() ? 0 : ib->second;
    if (m > ma) na = na * one_minus(e).pow(m - ma);
    if (m > mb) nb = nb * one_minus(e).pow(m - mb);
  }
  RatFun r(na + nb);
  if (r.num_.is_zero()) return zero(n);
  r.den_ = std::move(common);
  return r;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o0) const {
  size_t n = std::max(nvars(), o0.nvars());
  RatFun a = padded(n), b = o0.padded(n);
  if (a.is_zero() || b.is_zero()) return zero(n);
  RatFun r(a.num_ * b.num_);
  r.den_ = a.den_;
  for (const auto& [e, m] : b.den_) r.den_[e] += m;
  return r;
}

RatFun RatFun::operator*(const Rat& c) const {
  if (c == 0) return zero(nvars());
  RatFun r = *this;
  r.num_ = r.num_ * c;
  return r;
}

RatFun RatFun::times_monomial(const Exps& e) const {
  size_t n = std::max(nvars(), e.size());
  RatFun r = padded(n);
  r.num_ = r.num_.shifted(e);
  return r;
}

bool RatFun::equals(const RatFun& o0) const {
  size_t n = std::max(nvars(), o0.nvars());
  RatFun a = padded(n), b = o0.padded(n);
  std::map<Exps, int> common = a.den_;
  for (const auto& [e, m] : b.den_) common[e] = std::max(common[e], m);
  LaurentPoly na = a.num_, nb = b.num_;
  for (const auto& [e, m] : common) {
    auto ia = a.den_.find(e);
    auto ib = b.den_.find(e);
    int ma = ia == a.den_.end() ? 0 : ia->second;
    int mb = ib == b.den_.end() ? 0 : ib->second;
    if (m > ma) na = na * one_minus(e).pow(m - ma);
    if (m > mb) nb = nb * one_minus(e).pow(m - mb);
  }
  return na == nb;
}

RatFun RatFun::substitute_power(long c) const {
  if (c <= 0) throw std::invalid_argument("substitute_power: exponent must be positive");
  RatFun r(num_.substitute_power(c));
  for (const auto& [e, m] : den_) {
    Exps x = e;
    for (long& v : x) v *= c;
    r.den_[x] += m;
  }
  return r;
}

Rat RatFun::evaluate(const Rat& q, const RatVec& t) const {
  if (q == 0) throw std::invalid_argument("evaluate: q must be nonzero");
  for (const Rat& v : t)
    if (v == 0) throw std::invalid_argument("evaluate: T values must be nonzero");
  Rat d = 1;
  for (const auto& [e, m] : den_) {
    Rat f = 1 - eval_monomial(e, q, t);
    if (f == 0) throw PoleHit(e);
    d *= pow_rat(f, m);
  }
  return num_.evaluate(q, t) / d;
}

RatFun RatFun::canonical() const {
  RatFun r = *this;
  if (r.num_.is_zero()) return zero(nvars());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = r.den_.begin(); it != r.den_.end();) {
      while (it->second > 0) {
        auto qt = divide_one_minus(r.num_, it->first);
        if (!qt) break;
        r.num_ = std::move(*qt);
        --it->second;
      }
      it = it->second == 0 ? r.den_.erase(it) : std::next(it);
    }
    // (1 - z^{g p}) may collapse to (1 - z^{c p}) for a divisor c of g.
    for (auto it = r.den_.begin(); it != r.den_.end() && !changed; ++it) {
      const Exps e = it->first;
      long g = exps_gcd(e);
      for (long c = 1; c < g && !changed; ++c) {
        if (g % c) continue;
        Exps f = e;
        for (long& v : f) v = v / g * c;
        auto qt = divide_one_minus(r.num_ * one_minus(f), e);
        if (!qt) continue;
        r.num_ = std::move(*qt);
        if (--it->second == 0) r.den_.erase(it);
        r.den_[f] += 1;
        changed = true;
      }
    }
  }
  return r;
}

std::string RatFun::str() const {
  RatFun r = canonical();
  std::string n = r.num_.str();
  if (r.den_.empty()) return n;
  if (r.num_.terms().size() > 1) n = "(" + n + ")";
  std::string d;
  size_t count = 0;
  for (const auto& [e, m] : r.den_) {
    if (!d.empty()) d += "*";
    d += "(1 - " + monomial_str(e) + ")";
    if (m > 1) d += "^" + std::to_string(m);
    ++count;
  }
  if (count > 1 || r.den_.begin()->second > 1) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace igusa::genfun
