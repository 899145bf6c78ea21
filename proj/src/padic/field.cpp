#include "igusa/padic/field.hpp"

#include <stdexcept>
#include <vector>

namespace igusa::padic {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long LocalFieldConfig::q() const {
  long r = 1;
  for (int i = 0; i < delta; ++i) r *= p;
  return r;
}

void LocalFieldConfig::check() const {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (N < 1) throw std::invalid_argument("precision must be at least 1");
  if (delta < 1) throw std::invalid_argument("residue degree must be at least 1");
  if (kind == Kind::Qp && delta != 1) throw std::invalid_argument("Q_p has residue degree 1");
}

Int LocalFieldConfig::residues() const {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q()), static_cast<unsigned long>(N));
  return r;
}

std::string LocalFieldConfig::str() const {
  if (kind == Kind::Qp) return "Q_" + std::to_string(p) + " mod p^" + std::to_string(N);
  return "F_" + std::to_string(q()) + "((t)) mod t^" + std::to_string(N);
}

Digits decode(const LocalFieldConfig& cfg, const Int& e) {
  Digits d;
  if (e == 0) return d;
  Int base = cfg.kind == LocalFieldConfig::Kind::Qp ? Int(cfg.p) : Int(cfg.q());
  Int x = e;
  long v = 0;
  while (x % base == 0) {
    x /= base;
    ++v;
  }
  d.val = v;
  Int r = x % base;
  d.ac = r.get_si();
  return d;
}

namespace {

using Poly = std::vector<long>;  // coefficients mod p, constant term first

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& f, long p) {
  a = trim(a);
  long inv = 1;
  while (f.back() * inv % p != 1) ++inv;
  while (a.size() >= f.size()) {
    long c = a.back() * inv % p;
    size_t s = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i) a[s + i] = ((a[s + i] - c * f[i]) % p + p) % p;
    a = trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}

Poly from_code(long c, long p) {
  Poly a;
  for (; c > 0; c /= p) a.push_back(c % p);
  return a;
}

long to_code(const Poly& a, long p) {
  long c = 0;
  for (size_t i = a.size(); i-- > 0;) c = c * p + a[i];
  return c;
}

// Smallest monic irreducible polynomial of degree d over F_p, by trial division.
Poly irreducible(long p, int d) {
  long q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  for (long low = 0; low < q; ++low) {
    Poly f = from_code(low, p);
    f.resize(static_cast<size_t>(d) + 1, 0);
    f[static_cast<size_t>(d)] = 1;
    bool ok = true;
    for (long g = p; ok && g < q; ++g) {  // monic and non-monic divisors of degree 1 .. d-1
      Poly h = from_code(g, p);
      if (h.size() < 2 || 2 * (h.size() - 1) > static_cast<size_t>(d)) continue;
      ok = !poly_mod(f, h, p).empty();
    }
    if (ok) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

vfrag::ResidueMul residue_mul(const LocalFieldConfig& cfg) {
  cfg.check();
  long p = cfg.p;
  if (cfg.delta == 1) return {p, [p](long a, long b) { return a * b % p; }};
  Poly f = irreducible(p, cfg.delta);
  return {cfg.q(), [p, f](long a, long b) { return to_code(poly_mod(poly_mul(from_code(a, p), from_code(b, p), p), f, p), p); }};
}

}  // namespace igusa::padic
