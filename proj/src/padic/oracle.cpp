// SPDX-License-Identifier: MIT

#include "igusa/padic/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <thread>

#include "igusa/semilinear/qlinear.hpp"
#include "igusa/vfrag/integrate.hpp"

namespace igusa::padic {

using vfrag::MonomialRegion;
using vfrag::ValWeight;

namespace {

using ValKey = std::vector<std::optional<long>>;

Rat qpow(long q, const Int& e) {
  Rat r = pow_rat(Rat(q), e.get_si());
  return r;
}

struct Partial {
  Rat value = 0;
  std::map<ValKey, Int> deep;  // representatives per resolved-valuation pattern
  Int count = 0;
};

// E(gamma) = sum kappa_i f_i + omega on the pieces of the full stratum.
struct Exponent {
  std::vector<std::pair<vfrag::PresburgerSet, Affine>> parts;

  Exponent(const MonomialRegion& A, const ValWeight& w, const RatVec& kappa) {
    const vfrag::Stratum* s = A.full();
    if (!s) return;
    if (kappa.size() != w.num_t()) throw OracleError("expected one kappa per T variable");
    for (const auto& k : kappa)
      if (k <= 0) throw OracleError("kappa values must be positive");
    std::vector<const vfrag::QPiecewiseMap*> maps;
    for (const auto& [i, f] : w.kappa) maps.push_back(&f);
    if (w.gamma_form) maps.push_back(&*w.gamma_form);
    for (const auto& wp : vfrag::refine_by_maps(s->D, maps)) {
      size_t n = A.arity();
      Affine e(n);
      for (size_t j = 0; j < w.kappa.size(); ++j) e = e + wp.forms[j] * kappa[w.kappa[j].first];
      if (w.gamma_form) e = e + wp.forms.back();
      parts.emplace_back(wp.part, e);
    }
  }

  Int at(const IntVec& g) const {
    RatVec x;
    for (const auto& v : g) x.push_back(Rat(v));
    for (const auto& [p, e] : parts)
      if (p.contains(g)) {
        Rat r = e.eval(x);
        if (r.get_den() != 1) throw OracleError("weight exponent " + r.get_str() + " is not an integer");
        return r.get_num();
      }
    throw OracleError("weight undefined at a point of the region");
  }

  // Lower bound for E + (1 - eps) * sum of the deep coordinates over the relaxation with the
  // deep coordinates >= N. nullopt: no deep residue lies in A. Throws Unbounded.
  struct Unbounded {};
  std::optional<Rat> infimum(const ValKey& key, int N, const Rat& eps) const {
    size_t n = key.size();
    Affine deep_sum(n);
    for (size_t j = 0; j < n; ++j)
      if (!key[j]) deep_sum.coef[j] = 1;
    std::optional<Rat> best;
    for (const auto& [p, e] : parts)
      for (const auto& c : p.cells()) {
        semilinear::QSystem sys(n);
        for (const auto& t : c.ineqs) {
          Affine a(n);
          for (size_t j = 0; j < n; ++j) a.coef[j] = Rat(t.coef[j]);
          a.constant = Rat(t.constant);
          sys.add(a, semilinear::CKind::GE);
        }
        for (size_t j = 0; j < n; ++j) {
          Affine a = Affine::var(n, j);
          if (key[j]) {
            a.constant = -Rat(*key[j]);
            sys.add(a, semilinear::CKind::EQ);
          } else {
            a.constant = -Rat(N);
            sys.add(a, semilinear::CKind::GE);
          }
        }
        if (!sys.feasible()) continue;
        auto inf = sys.infimum(e + deep_sum * (1 - eps));
        if (!inf) throw Unbounded{};
        if (!best || inf->value < *best) best = inf->value;
      }
    return best;
  }
};

// Bound for the deep part of one residue pattern. With d deep coordinates and
// L = sum_deep gamma_j + E >= m + eps * sum_deep (gamma_j - N), the deep volume (q - 1) q^-gamma
// per coordinate sums to at most (q - 1)^d * q^-m * (1 / (1 - q^-eps))^d.
// eps = 1 gives q^{d(1-N)} q^{-inf E}; for eps = 1/k, q^{1/k} >= 1 + 0.69/k bounds the series.
Rat deep_bound(const Exponent& E, const ValKey& key, const LocalFieldConfig& cfg) {
  long d = 0;
  for (const auto& v : key) d += !v;
  long q = cfg.q();
  for (long k = 1; k <= 64; k *= 2) {
    Rat eps(1, k);
    std::optional<Rat> inf;
    try {
      inf = E.infimum(key, cfg.N, eps);
    } catch (const Exponent::Unbounded&) {
      continue;
    }
    if (!inf) return 0;
    Rat m = *inf + eps * Rat(d * cfg.N);
    if (k == 1) {
      // E is an integer at lattice points
      Int v = ceil_div(inf->get_num(), inf->get_den());
      return qpow(q, Int(d * (1 - cfg.N)) - v);
    }
    Rat series = (Rat(k) + Rat(69, 100)) / Rat(69, 100);
    Int lo = floor_div(m.get_num(), m.get_den());
    return pow_rat(Rat(q - 1) * series, d) * qpow(q, -lo);
  }
  throw OracleError("tail not certified: weight unbounded on the deep residues");
}

struct Coord {
  std::optional<long> val;
  long ac;
  Int mult;
};

std::vector<Coord> grouped_classes(const LocalFieldConfig& cfg) {
  std::vector<Coord> out;
  long q = cfg.q();
  for (long v = 0; v < cfg.N; ++v) {
    Int m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(cfg.N - 1 - v));
    for (long a = 1; a < q; ++a) out.push_back({v, a, m});
  }
  out.push_back({std::nullopt, 0, Int(1)});
  return out;
}

void visit(const MonomialRegion& A, const Exponent& E, const LocalFieldConfig& cfg, const vfrag::ResidueMul& field,
           const std::vector<Coord>& pt, const Int& mult, Partial& acc) {
  acc.count += mult;
  ValKey key;
  bool deep = false;
  for (const auto& c : pt) {
    key.push_back(c.val);
    deep = deep || !c.val;
  }
  if (deep) {
    acc.deep[key] += mult;
    return;
  }
  std::vector<std::optional<Int>> val;
  std::vector<long> ac;
  IntVec g;
  for (const auto& c : pt) {
    val.emplace_back(Int(*c.val));
    g.push_back(Int(*c.val));
    ac.push_back(c.ac);
  }
  if (!A.contains(val, ac, &field)) return;
  acc.value += Rat(mult) * qpow(cfg.q(), -E.at(g));
}

Partial run_grouped(const MonomialRegion& A, const Exponent& E, const LocalFieldConfig& cfg, size_t first) {
  auto field = residue_mul(cfg);
  auto cls = grouped_classes(cfg);
  size_t n = A.arity();
  Partial acc;
  std::vector<size_t> idx(n, 0);
  idx[0] = first;
  for (;;) {
    std::vector<Coord> pt;
    Int mult = 1;
    for (size_t j = 0; j < n; ++j) {
      pt.push_back(cls[idx[j]]);
      mult *= cls[idx[j]].mult;
    }
    visit(A, E, cfg, field, pt, mult, acc);
    size_t j = n;
    while (j > 1) {
      --j;
      if (++idx[j] < cls.size()) break;
      idx[j] = 0;
      if (j == 1) return acc;
    }
    if (n == 1 || j == 0) return acc;
  }
}

Partial run_explicit(const MonomialRegion& A, const Exponent& E, const LocalFieldConfig& cfg, long digit) {
  auto field = residue_mul(cfg);
  size_t n = A.arity();
  Int R = cfg.residues();
  long q = cfg.q();
  Partial acc;
  // first coordinate runs over the residues with leading digit `digit`
  std::vector<Int> e(n, 0);
  e[0] = digit;
  for (;;) {
    std::vector<Coord> pt;
    for (size_t j = 0; j < n; ++j) {
      Digits d = decode(cfg, e[j]);
      pt.push_back({d.val, d.ac, Int(1)});
    }
    visit(A, E, cfg, field, pt, Int(1), acc);
    size_t j = n;
    bool done = true;
    while (j > 0) {
      --j;
      e[j] += j == 0 ? Int(q) : Int(1);
      if (e[j] < R) {
        done = false;
        break;
      }
      e[j] = j == 0 ? Int(digit) : Int(0);
    }
    if (done) return acc;
  }
}

}  // namespace

Truncation truncate(const MonomialRegion& A, const ValWeight& w, const RatVec& kappa, const LocalFieldConfig& cfg,
                    Enumeration mode, unsigned threads) {
  cfg.check();
  size_t n = A.arity();
  if (n == 0) throw OracleError("region of arity 0");
  Exponent E(A, w, kappa);
  size_t jobs = mode == Enumeration::Grouped ? grouped_classes(cfg).size() : static_cast<size_t>(cfg.q());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Partial> parts(jobs);
  std::vector<std::future<void>> running;
  std::atomic<size_t> next{0};
  for (unsigned t = 0; t < std::min<size_t>(threads, jobs); ++t)
    running.push_back(std::async(std::launch::async, [&] {
      for (size_t k; (k = next++) < jobs;)
        parts[k] = mode == Enumeration::Grouped ? run_grouped(A, E, cfg, k) : run_explicit(A, E, cfg, static_cast<long>(k));
    }));
  for (auto& f : running) f.get();
  Truncation out;
  std::map<ValKey, Int> deep;
  for (const auto& p : parts) {
    out.value += p.value;
    out.representatives += p.count;
    for (const auto& [k, m] : p.deep) deep[k] += m;
  }
  Rat cell = qpow(cfg.q(), Int(static_cast<long>(n) * (1 - cfg.N)));
  out.value *= cell;
  for (const auto& [k, m] : deep) {
    long shallow = 0;
    for (const auto& v : k) shallow += v.has_value();
    out.tail += Rat(m) * qpow(cfg.q(), Int(shallow * (1 - cfg.N))) * deep_bound(E, k, cfg);
  }
  return out;
}

Rat truncated_zeta(const MonomialRegion& A, const ValWeight& w, const RatVec& kappa, const LocalFieldConfig& cfg) {
  return truncate(A, w, kappa, cfg).value;
}

Rat tail_bound(const MonomialRegion& A, const ValWeight& w, const RatVec& kappa, const LocalFieldConfig& cfg) {
  return truncate(A, w, kappa, cfg).tail;
}

Rat OracleReport::discrepancy() const {
  Rat d = truncated - symbolic;
  return d < 0 ? Rat(-d) : d;
}

std::string OracleReport::str() const {
  return std::string(pass ? "pass" : "fail") + ": truncated " + truncated.get_str() + ", symbolic " +
         symbolic.get_str() + ", |difference| " + discrepancy().get_str() + ", tail bound " + tail.get_str();
}

nlohmann::json OracleReport::to_json() const {
  return {{"truncated", truncated.get_str()},
          {"tail_bound", tail.get_str()},
          {"symbolic", symbolic.get_str()},
          {"difference", discrepancy().get_str()},
          {"verdict", pass ? "pass" : "fail"}};
}

OracleReport compare(const genfun::RatFun& symbolic, const MonomialRegion& A, const ValWeight& w, const RatVec& kappa,
                     const LocalFieldConfig& cfg, Enumeration mode) {
  cfg.check();
  long q = cfg.q();
  RatVec t;
  for (const auto& k : kappa) {
    if (k.get_den() != 1) throw OracleError("q^-kappa is irrational for kappa = " + k.get_str());
    t.push_back(pow_rat(Rat(q), -k.get_num().get_si()));
  }
  OracleReport r;
  r.symbolic = symbolic.evaluate(Rat(q), t);
  Truncation tr = truncate(A, w, kappa, cfg, mode);
  r.truncated = tr.value;
  r.tail = tr.tail;
  r.pass = r.discrepancy() <= r.tail;
  return r;
}

}  // namespace igusa::padic
