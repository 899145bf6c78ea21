#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace igusa {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
// a mod b in [0, |b|)
Int mod_floor(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// g = a*x + b*y, g >= 0
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);
Int gcd_of(const IntVec& v);

Rat floor_rat(const Rat& r);
Int floor_q(const Rat& r);
Int ceil_q(const Rat& r);
Rat make_rat(long n, long d = 1);
bool is_integer(const Rat& r);

// Rational to canonical "a" or "a/b".
std::string to_str(const Rat& r);
std::string to_str(const Int& z);
std::string to_decimal(const Rat& r, int digits);

Rat pow_rat(const Rat& base, long e);
Int pow_int(const Int& base, unsigned long e);

// Solve for x in { r_i mod m_i }, returns false if incompatible.
bool crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2, Int& r, Int& m);

bool is_prime(long p);

}  // namespace igusa
