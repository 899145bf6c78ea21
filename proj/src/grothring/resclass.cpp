#include "igusa/grothring/resclass.hpp"

#include <algorithm>
#include <mutex>
#include <vector>
#include <stdexcept>

namespace igusa::grothring {

namespace {

struct Symbol {
  int grade;
  genfun::LaurentPoly count;
};

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, Symbol>& registry() {
  static std::map<std::string, Symbol> r;
  return r;
}

}  // namespace

void register_symbol(const std::string& name, int grade, const genfun::LaurentPoly& count) {
  if (name == "u" || name == "v" || name.empty()) throw std::invalid_argument("register_symbol: reserved name '" + name + "'");
  if (grade < 1) throw std::invalid_argument("register_symbol: grade must be positive");
  if (count.num_t() != 0) throw std::invalid_argument("register_symbol: point count must be a polynomial in q");
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[name] = Symbol{grade, count};
}

bool symbol_known(const std::string& name) {
  if (name == "u" || name == "v") return true;
  std::lock_guard<std::mutex> lock(registry_mutex());
  return registry().count(name) > 0;
}

int symbol_grade(const std::string& name) {
  if (name == "u" || name == "v") return 1;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown residue symbol '" + name + "'");
  return it->second.grade;
}

genfun::LaurentPoly symbol_count(const std::string& name) {
  if (name == "u") return genfun::LaurentPoly::q_power(1, 1) - genfun::LaurentPoly::constant(1, 1);
  if (name == "v") return genfun::LaurentPoly::constant(1, 1);
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown residue symbol '" + name + "'");
  return it->second.count;
}

int mono_degree(const ResMono& m) {
  int d = 0;
  for (const auto& [s, e] : m) d += e * symbol_grade(s);
  return d;
}

ResPoly ResPoly::constant(const Int& c) {
  ResPoly p;
  p.add_term({}, c);
  return p;
}

ResPoly ResPoly::var(const std::string& name, int e, const Int& c) {
  if (!symbol_known(name)) throw std::invalid_argument("unknown residue symbol '" + name + "'");
  ResPoly p;
  ResMono m;
  if (e != 0) m[name] = e;
  p.add_term(m, c);
  return p;
}

void ResPoly::add_term(const ResMono& m, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> ResPoly::degree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    int k = mono_degree(m);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

bool ResPoly::has_negative() const {
  for (const auto& [m, c] : terms_)
    if (c < 0) return true;
  return false;
}

ResPoly ResPoly::operator+(const ResPoly& o) const {
  ResPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ResPoly ResPoly::operator-() const {
  ResPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ResPoly ResPoly::operator-(const ResPoly& o) const { return *this + (-o); }

ResPoly ResPoly::operator*(const Int& k) const {
  ResPoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, c * k);
  return r;
}

ResPoly ResPoly::operator*(const ResPoly& o) const {
  ResPoly r;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      ResMono m = a;
      for (const auto& [s, e] : b) m[s] += e;
      r.add_term(m, ca * cb);
    }
  return r;
}

ResPoly ResPoly::pow(unsigned n) const {
  ResPoly r = constant(1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

ResPoly ResPoly::subst_v(const ResPoly& image) const {
  ResPoly r;
  for (const auto& [m, c] : terms_) {
    ResMono rest = m;
    int e = 0;
    auto it = rest.find("v");
    if (it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    ResPoly t;
    t.add_term(rest, c);
    r = r + t * image.pow(static_cast<unsigned>(e));
  }
  return r;
}

std::optional<ResPoly> ResPoly::div_v() const {
  ResPoly r;
  for (const auto& [m, c] : terms_) {
    auto it = m.find("v");
    if (it == m.end()) return std::nullopt;
    ResMono mm = m;
    if (--mm["v"] == 0) mm.erase("v");
    r.add_term(mm, c);
  }
  return r;
}

std::optional<ResPoly> ResPoly::div_A() const {
  // Synthetic division by u + v as a polynomial in u.
  std::map<int, ResPoly> byu;  // power of u -> coefficient in the other variables
  for (const auto& [m, c] : terms_) {
    ResMono rest = m;
    int e = 0;
    auto it = rest.find("u");
    if (it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    byu[e].add_term(rest, c);
  }
  if (byu.empty()) return ResPoly();
  int top = byu.rbegin()->first;
  ResPoly quotient;
  // P = (u + v) Q: q_{k-1} = p_k - v q_k, from the top down
  std::vector<ResPoly> q(static_cast<size_t>(top) + 1);
  ResPoly prev;  // q_k
  for (int k = top; k >= 1; --k) {
    ResPoly pk = byu.count(k) ? byu[k] : ResPoly();
    ResPoly qk1 = pk - ResPoly::v() * prev;
    q[static_cast<size_t>(k - 1)] = qk1;
    prev = qk1;
  }
  ResPoly p0 = byu.count(0) ? byu[0] : ResPoly();
  if (!(p0 - ResPoly::v() * prev).is_zero()) return std::nullopt;
  for (int k = 0; k < top; ++k) quotient = quotient + q[static_cast<size_t>(k)] * ResPoly::var("u", k);
  return quotient;
}

genfun::LaurentPoly ResPoly::point_count() const {
  genfun::LaurentPoly total(1);
  for (const auto& [m, c] : terms_) {
    genfun::LaurentPoly t = genfun::LaurentPoly::constant(1, Rat(c));
    for (const auto& [s, e] : m) t = t * symbol_count(s).pow(static_cast<unsigned>(e));
    total += t;
  }
  return total;
}

Rat ResPoly::point_count(const Rat& q) const { return point_count().evaluate(q, {}); }

std::string ResPoly::str() const {
  if (terms_.empty()) return "0";
  // u-heavy monomials first
  std::vector<std::pair<ResMono, Int>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    auto eu = [](const ResMono& m) {
      auto it = m.find("u");
      return it == m.end() ? 0 : it->second;
    };
    int da = mono_degree(a.first), db = mono_degree(b.first);
    if (da != db) return da > db;
    return eu(a.first) > eu(b.first);
  });
  std::string s;
  for (const auto& [m, c] : ts) {
    std::string body;
    for (const auto& name : {std::string("u"), std::string("v")}) {
      auto it = m.find(name);
      if (it == m.end()) continue;
      if (!body.empty()) body += "*";
      body += name + (it->second != 1 ? "^" + std::to_string(it->second) : "");
    }
    for (const auto& [name, e] : m) {
      if (name == "u" || name == "v") continue;
      if (!body.empty()) body += "*";
      body += name + (e != 1 ? "^" + std::to_string(e) : "");
    }
    Int a = abs(c);
    std::string t = body.empty() ? a.get_str() : (a == 1 ? body : a.get_str() + "*" + body);
    if (s.empty()) s = (c < 0 ? "-" : "") + t;
    else s += (c < 0 ? " - " : " + ") + t;
  }
  return s;
}

ResClass ResClass::from_poly(const ResPoly& p, bool semiring) {
  ResClass r(semiring);
  for (const auto& [m, c] : p.terms()) r.comps_[mono_degree(m)].add_term(m, c);
  for (auto it = r.comps_.begin(); it != r.comps_.end();) it = it->second.is_zero() ? r.comps_.erase(it) : std::next(it);
  r.check();
  return r;
}

void ResClass::check() const {
  if (!semiring_) return;
  for (const auto& [k, p] : comps_)
    if (p.has_negative()) throw std::domain_error("negative coefficient in semiring mode: " + p.str());
}

ResPoly ResClass::component(int k) const {
  auto it = comps_.find(k);
  return it == comps_.end() ? ResPoly() : it->second;
}

ResClass ResClass::operator+(const ResClass& o) const {
  ResClass r(semiring_ && o.semiring_);
  r.comps_ = comps_;
  for (const auto& [k, p] : o.comps_) {
    r.comps_[k] = r.comps_[k] + p;
    if (r.comps_[k].is_zero()) r.comps_.erase(k);
  }
  r.check();
  return r;
}

ResClass ResClass::operator-(const ResClass& o) const {
  if (semiring_ || o.semiring_) throw std::domain_error("subtraction is not available in semiring mode");
  ResClass neg = o;
  for (auto& [k, p] : neg.comps_) p = -p;
  return *this + neg;
}

ResClass ResClass::operator*(const ResClass& o) const {
  ResClass r(semiring_ && o.semiring_);
  for (const auto& [ka, pa] : comps_)
    for (const auto& [kb, pb] : o.comps_) {
      ResPoly& slot = r.comps_[ka + kb];
      slot = slot + pa * pb;
    }
  for (auto it = r.comps_.begin(); it != r.comps_.end();) it = it->second.is_zero() ? r.comps_.erase(it) : std::next(it);
  r.check();
  return r;
}

std::map<int, genfun::LaurentPoly> ResClass::point_count_by_grade() const {
  std::map<int, genfun::LaurentPoly> out;
  for (const auto& [k, p] : comps_) out[k] = p.point_count();
  return out;
}

genfun::LaurentPoly ResClass::point_count() const {
  genfun::LaurentPoly t(1);
  for (const auto& [k, p] : comps_) t += p.point_count();
  return t;
}

Rat ResClass::point_count(const Rat& q) const { return point_count().evaluate(q, {}); }

std::string ResClass::str() const {
  if (comps_.empty()) return "0";
  std::string s;
  for (const auto& [k, p] : comps_) {
    if (!s.empty()) s += " | ";
    s += "[" + std::to_string(k) + "] " + p.str();
  }
  return s;
}

}  // namespace igusa::grothring
