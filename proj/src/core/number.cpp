// SPDX-License-Identifier: MIT

#include "igusa/core/number.hpp"

#include <sstream>
#include <stdexcept>

namespace igusa {

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("ceil_div: division by zero");
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int m = abs(b);
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& a : v) g = gcd(g, a);
  return g;
}

Rat floor_rat(const Rat& r) { return Rat(floor_q(r)); }

Int floor_q(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }
Int ceil_q(const Rat& r) { return ceil_div(r.get_num(), r.get_den()); }

Rat make_rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

std::string to_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_str(const Int& z) { return z.get_str(); }

std::string to_decimal(const Rat& r, int digits) {
  if (digits < 0) digits = 0;
  Int scale = pow_int(Int(10), static_cast<unsigned long>(digits));
  Rat s = abs(r) * scale;
  // round half up
  Int v = floor_q(s + Rat(1, 2));
  std::string body = v.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<size_t>(digits)) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  if (r < 0 && v != 0) body.insert(0, "-");
  return body;
}

Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (base == 0) throw std::domain_error("pow_rat: zero to a negative power");
    Rat inv = 1 / base;
    return pow_rat(inv, -e);
  }
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2, Int& r, Int& m) {
  Int x, y;
  Int g = ext_gcd(m1, m2, x, y);
  Int diff = r2 - r1;
  if (mod_floor(diff, g) != 0) return false;
  m = m1 / g * m2;
  // r = r1 + m1 * ((diff/g) * x mod (m2/g))
  Int t = mod_floor(diff / g * x, m2 / g);
  r = mod_floor(r1 + m1 * t, m);
  return true;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace igusa
