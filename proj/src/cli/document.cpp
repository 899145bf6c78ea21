#include "igusa/cli/document.hpp"

#include <algorithm>
#include <set>

#include "igusa/presburger/formula.hpp"
#include "igusa/semilinear/qcell.hpp"

namespace igusa::cli {

using presburger::PCell;
using presburger::PresburgerSet;

std::string decl_name(const Decl& d) {
  return std::visit([](const auto& x) { return x.name; }, d);
}

std::string decl_kind(const Decl& d) {
  switch (d.index()) {
    case 0: return std::get<SetDecl>(d).rational ? "qset" : "set";
    case 1: return "region";
    case 2: return "weight";
    case 3: return "exponent";
    case 4: return "map";
    default: return "class";
  }
}

const Decl* SpecDocument::find(const std::string& name) const {
  for (const auto& d : decls)
    if (decl_name(d) == name) return &d;
  return nullptr;
}

void SpecDocument::resolve() const {
  std::set<std::string> seen;
  for (const auto& d : decls) {
    std::string n = decl_name(d);
    if (!seen.insert(n).second) throw ResolveError(n, "duplicate name '" + n + "'");
    if (const auto* m = std::get_if<MapDecl>(&d)) {
      size_t k = m->matrix.size();
      for (const auto& row : m->matrix)
        if (row.size() != k) throw ResolveError(n, "map '" + n + "': matrix must be square");
      if (m->shift.size() != k) throw ResolveError(n, "map '" + n + "': shift has the wrong length");
      if (!m->vars.empty() && m->vars.size() != k) throw ResolveError(n, "map '" + n + "': arity mismatch");
    }
    if (const auto* c = std::get_if<ClassDecl>(&d)) {
      for (const auto& t : c->terms) {
        auto deg = t.x.degree();
        if (!t.x.is_zero() && !deg)
          throw ResolveError(n, "class '" + n + "': residue part " + t.x.str() + " is not homogeneous");
        if (!t.x.is_zero() && *deg != static_cast<int>(t.vars.size()))
          throw ResolveError(n, "class '" + n + "': residue part of degree " + std::to_string(*deg) +
                                    " paired with a Gamma set of arity " + std::to_string(t.vars.size()));
      }
    }
    if (const auto* r = std::get_if<RegionDecl>(&d)) {
      std::set<std::vector<std::string>> patterns;
      for (const auto& s : r->strata) {
        auto z = s.zeros;
        std::sort(z.begin(), z.end());
        if (std::adjacent_find(z.begin(), z.end()) != z.end())
          throw ResolveError(n, "region '" + n + "': repeated zero coordinate");
      }
    }
  }
  if (params.kappa.size() > 0)
    for (const auto& k : params.kappa)
      if (k <= 0) throw ResolveError("kappa", "kappa values must be positive");
}

PresburgerSet build_set(const SetDecl& d) { return presburger::to_set(d.formula, d.vars.size()); }

semilinear::SemilinearSet build_qset(const SetDecl& d) {
  if (d.formula.has_congruence())
    throw ResolveError(d.name, "'" + d.name + "' has congruence conditions and cannot be read over Q");
  return semilinear::decompose(d.formula, d.vars.size());
}

vfrag::MonomialRegion build_region(const RegionDecl& d) {
  size_t n = d.vars.size();
  vfrag::MonomialRegion r(n);
  for (const auto& s : d.strata) {
    vfrag::Stratum st;
    for (const auto& z : s.zeros)
      st.zeros.push_back(static_cast<size_t>(std::find(d.vars.begin(), d.vars.end(), z) - d.vars.begin()));
    std::sort(st.zeros.begin(), st.zeros.end());
    size_t m = n - st.zeros.size();
    st.D = presburger::to_set(s.gamma, m);
    std::vector<FiberDecl> fibers = s.fibers;
    if (fibers.empty()) fibers.push_back({grothring::ResPoly::var("u", static_cast<int>(m)), std::vector<vfrag::AcCond>(m), {}});
    for (const auto& f : fibers) {
      std::vector<PCell> cells;
      if (f.when) {
        for (const auto& c : presburger::to_set(*f.when, m).cells()) cells.push_back(c);
      } else {
        cells.push_back(PCell(m));
      }
      std::optional<std::vector<vfrag::AcCond>> ac = f.ac;
      if (!ac) {
        if (f.poly == grothring::ResPoly::var("u", static_cast<int>(m))) ac = std::vector<vfrag::AcCond>(m);
        else if (f.poly == grothring::ResPoly::var("v", static_cast<int>(m)))
          ac = std::vector<vfrag::AcCond>(m, vfrag::AcCond::eq(1));
      }
      for (const auto& c : cells) {
        if (ac) st.fibers.push_back(vfrag::FiberPiece::from_ac(c, *ac));
        else st.fibers.push_back(vfrag::FiberPiece::symbolic(c, grothring::ResClass::from_poly(f.poly)));
      }
    }
    r.add_stratum(std::move(st));
  }
  try {
    r.validate();
  } catch (const vfrag::RegionError& e) {
    throw ResolveError(d.name, "region '" + d.name + "': " + e.what());
  }
  return r;
}

vfrag::ValWeight build_weight(const WeightDecl& d) {
  size_t n = d.vars.size();
  vfrag::ValWeight w = vfrag::ValWeight::trivial(n);
  std::map<size_t, semilinear::QPiecewiseMap> maps;
  for (const auto& e : d.entries) {
    auto& m = maps[e.index];
    m.in = n;
    m.out = 1;
    auto dom = e.when ? semilinear::decompose(*e.when, n) : vfrag::universe_q(n);
    for (const auto& c : dom.cells()) m.pieces.push_back({c, {e.form.coef}, {e.form.constant}});
  }
  for (auto& [i, m] : maps) {
    if (i == 0) w.gamma_form = m;
    else w.kappa.emplace_back(i - 1, m);
  }
  return w;
}

vfrag::MonomialMap build_map(const MapDecl& d) { return vfrag::MonomialMap(d.matrix, d.shift); }

}  // namespace igusa::cli
