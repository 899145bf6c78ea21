#include "igusa/genfun/assemble.hpp"

#include <numeric>
#include <sstream>

namespace igusa::genfun {

using presburger::LinTerm;
using presburger::PCell;
using presburger::PresburgerSet;

ExponentData scale_exponents(const ExponentData& e, long rho) {
  ExponentData r = e;
  r.Lq.constant *= rho;
  for (auto& t : r.LT) t.constant *= rho;
  return r;
}

namespace {

std::vector<IntVec> residues(size_t n, long rho) {
  std::vector<IntVec> out{IntVec{}};
  for (size_t i = 0; i < n; ++i) {
    std::vector<IntVec> next;
    for (const auto& v : out)
      for (long k = 0; k < rho; ++k) {
        IntVec u = v;
        u.push_back(k);
        next.push_back(u);
      }
    out.swap(next);
  }
  return out;
}

PresburgerSet residue_class(const PresburgerSet& s, const IntVec& d, long rho) {
  size_t n = s.arity();
  PCell c(n);
  for (size_t i = 0; i < n; ++i) c.add_cong(LinTerm::var(n, i) - LinTerm::constant_term(n, d[i]), Int(rho));
  return s.intersect(PresburgerSet::from_cell(c.normalized()));
}

long gcd_with(const IntVec& d, long rho) {
  long g = rho;
  for (const auto& v : d) g = std::gcd(g, v.get_si());
  return g;
}

}  // namespace

std::vector<std::pair<IntVec, PresburgerSet>> split_rho(const PresburgerSet& s, long rho) {
  if (rho < 1) throw std::invalid_argument("split_rho: rho must be positive");
  PresburgerSet dil = s.dilate(Int(rho));
  std::vector<std::pair<IntVec, PresburgerSet>> out;
  if (rho == 1) {
    out.emplace_back(IntVec(s.arity(), Int(0)), dil);
    return out;
  }
  for (const auto& d : residues(s.arity(), rho)) out.emplace_back(d, residue_class(dil, d, rho));
  return out;
}

RatFun zeta_assemble(const std::vector<ZetaPiece>& pieces, long rho, AssembleStats* stats) {
  size_t nv = 1;
  for (const auto& p : pieces) nv = std::max({nv, p.e.nvars(), p.count.nvars()});
  RatFun total = RatFun::zero(nv);
  AssembleStats st;
  for (const auto& p : pieces) {
    if (p.count.is_zero()) continue;
    ExponentData e = scale_exponents(p.e, rho);
    st.nu = std::max(st.nu, p.delta.arity());
    RatFun part = RatFun::zero(nv);
    for (const auto& [d, cls] : split_rho(p.delta, rho)) {
      if (cls.is_empty()) continue;
      ++st.mu;
      part += sum_over_set(cls, e);
    }
    total += RatFun(p.count) * part;
  }
  if (stats) *stats = st;
  return total.canonical();
}

bool FamilyReport::certified() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  for (const auto& r : per_rho)
    if (!r.reproduces) return false;
  return true;
}

FamilyReport uniform_family(const std::vector<ZetaPiece>& pieces, const std::vector<long>& rho_list) {
  FamilyReport rep;
  // (m, piece, residue) -> index into functions
  std::map<std::tuple<long, size_t, IntVec>, size_t> index;
  auto function_for = [&](long m, size_t pi, const IntVec& dprim) -> size_t {
    auto key = std::make_tuple(m, pi, dprim);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const auto& p = pieces[pi];
    ExponentData e = scale_exponents(p.e, m);
    PresburgerSet dil = p.delta.dilate(Int(m));
    PresburgerSet cls = m == 1 ? dil : residue_class(dil, dprim, m);
    FamilyFunction f{m, pi, dprim, sum_over_set(cls, e)};
    rep.functions.push_back(f);
    index[key] = rep.functions.size() - 1;
    return rep.functions.size() - 1;
  };

  for (long rho : rho_list) {
    if (rho < 1) throw std::invalid_argument("uniform_family: rho must be positive");
    FamilyRho fr;
    fr.rho = rho;
    fr.direct = zeta_assemble(pieces, rho);
    size_t nv = fr.direct.nvars();
    RatFun acc = RatFun::zero(nv);
    for (size_t pi = 0; pi < pieces.size(); ++pi) {
      const auto& p = pieces[pi];
      if (p.count.is_zero()) continue;
      for (const auto& d : residues(p.delta.arity(), rho)) {
        long c = gcd_with(d, rho);
        long m = rho / c;
        IntVec dprim;
        for (const auto& v : d) dprim.push_back(Int(v.get_si() / c));
        size_t fi = function_for(m, pi, dprim);
        fr.summands.push_back(FamilySummand{m, fi, c});
        acc += RatFun(p.count) * rep.functions[fi].R.substitute_power(c);
      }
    }
    fr.recomposed = acc.canonical();
    fr.reproduces = fr.recomposed.equals(fr.direct);
    rep.per_rho.push_back(std::move(fr));
  }

  // Every Delta_d at rho reappears as c * Delta_d at rho' = c * rho.
  for (long rho : rho_list)
    for (long rho2 : rho_list) {
      if (rho2 == rho || rho2 % rho != 0) continue;
      long c = rho2 / rho;
      for (size_t pi = 0; pi < pieces.size(); ++pi) {
        auto low = split_rho(pieces[pi].delta, rho);
        PresburgerSet dil2 = pieces[pi].delta.dilate(Int(rho2));
        for (const auto& [d, cls] : low) {
          IntVec d2;
          for (const auto& v : d) d2.push_back(v * c);
          PresburgerSet high = rho2 == 1 ? dil2 : residue_class(dil2, d2, rho2);
          ScalingCheck chk{rho, rho2, pi, d, presburger::equivalent(cls.scale(Int(c)), high)};
          rep.checks.push_back(chk);
        }
      }
    }
  return rep;
}

std::string FamilyReport::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < functions.size(); ++i) {
    const auto& f = functions[i];
    os << "R[" << i << "] m=" << f.m << " piece=" << f.piece << " d=(";
    for (size_t j = 0; j < f.residue.size(); ++j) os << (j ? "," : "") << f.residue[j];
    os << "): " << f.R.str() << "\n";
  }
  for (const auto& r : per_rho) {
    os << "rho=" << r.rho << ": " << r.direct.str() << " = sum of";
    for (const auto& s : r.summands) os << " R[" << s.index << "](^" << s.power << ")";
    os << (r.reproduces ? " [reproduced]" : " [MISMATCH]") << "\n";
  }
  size_t bad = 0;
  for (const auto& c : checks)
    if (!c.ok) ++bad;
  os << "scaling checks: " << checks.size() - bad << "/" << checks.size() << " certified\n";
  return os.str();
}

}  // namespace igusa::genfun
