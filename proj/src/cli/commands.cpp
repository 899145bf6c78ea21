#include "igusa/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "igusa/genfun/summation.hpp"
#include "igusa/grothring/retract.hpp"
#include "igusa/grothring/serialize.hpp"
#include "igusa/padic/oracle.hpp"
#include "igusa/presburger/formula.hpp"
#include "igusa/semilinear/euler.hpp"
#include "igusa/semilinear/qcell.hpp"
#include "igusa/vfrag/change_vars.hpp"
#include "igusa/vfrag/integrate.hpp"

namespace igusa::cli {

using nlohmann::json;

int default_precision() {
  if (const char* s = std::getenv("IGUSA_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0 && v < 1000) return static_cast<int>(v);
  }
  return 10;
}

json ratfun_json(const genfun::RatFun& f) {
  genfun::RatFun c = f.canonical();
  json den = json::array();
  for (const auto& [e, m] : c.denominator()) den.push_back({{"exponents", e}, {"multiplicity", m}});
  return {{"string", c.str()}, {"numerator", c.numerator().str()}, {"denominator", den}};
}

std::string CommandResult::render(bool as_json) const {
  if (as_json) {
    json j = {{"command", command},
              {"result", payload},
              {"exit_code", exit_code},
              {"note", "exact rational arithmetic"}};
    return j.dump(2) + "\n";
  }
  return text.empty() || text.back() == '\n' ? text : text + "\n";
}

namespace {

void need(const std::vector<std::string>& args, size_t lo, size_t hi, const std::string& usage) {
  if (args.size() < lo || args.size() > hi) throw ResolveError("", "usage: " + usage);
}

long pick_rho(const SpecDocument& doc, const Flags& f) { return f.rho.empty() ? doc.params.rho.front() : f.rho.front(); }

vfrag::Normalization norm(const SpecDocument& doc) {
  return doc.params.normalization == "classical" ? vfrag::Normalization::Classical : vfrag::Normalization::MaximalIdeal;
}

vfrag::ValWeight weight_or_trivial(const SpecDocument& doc, const std::vector<std::string>& args, size_t i, size_t n) {
  if (args.size() <= i) return vfrag::ValWeight::trivial(n);
  const auto& wd = doc.get<WeightDecl>(args[i]);
  if (wd.vars.size() != n)
    throw ResolveError(args[i], "weight '" + args[i] + "' has arity " + std::to_string(wd.vars.size()) +
                                    ", the region has arity " + std::to_string(n));
  return build_weight(wd);
}

std::string rat_display(const Rat& x, const Flags& f) {
  std::string s = x.get_str();
  if (f.decimal) s += " (~" + to_decimal(x, *f.decimal) + ")";
  return s;
}

CommandResult cmd_qe(const std::vector<std::string>& args, const SpecDocument& doc) {
  need(args, 1, 1, "qe SET");
  const auto& d = doc.get<SetDecl>(args[0]);
  CommandResult r;
  if (d.rational) {
    auto s = build_qset(d);
    std::string f = s.formula().str(d.vars);
    r.payload = {{"domain", "Q"}, {"cells", s.cells().size()}, {"formula", f}};
    r.text = f;
  } else {
    auto s = build_set(d);
    std::string f = s.str(d.vars);
    r.payload = {{"domain", "Z"}, {"cells", s.cells().size()}, {"formula", f}};
    r.text = f;
  }
  return r;
}

CommandResult cmd_euler(const std::vector<std::string>& args, const SpecDocument& doc) {
  need(args, 1, 1, "euler SET");
  auto e = semilinear::euler(build_qset(doc.get<SetDecl>(args[0])));
  CommandResult r;
  r.payload = {{"chi_g", e.chi_g.get_si()}, {"chi_b", e.chi_b.get_si()}, {"class", e.cls.str()}};
  r.text = "chi_g = " + e.chi_g.get_str() + ", chi_b = " + e.chi_b.get_str() + ", class = " + e.cls.str();
  return r;
}

grothring::RVClass build_class(const ClassDecl& d) {
  grothring::RVClass c;
  for (const auto& t : d.terms) {
    if (t.x.is_zero()) continue;
    if (t.gamma.has_congruence()) throw ResolveError(d.name, "class '" + d.name + "': Gamma sets are read over Q");
    auto I = semilinear::decompose(t.gamma, t.vars.size());
    c = c + grothring::RVClass::tensor(t.x, grothring::GammaRep::with_identity(I));
  }
  return c;
}

CommandResult cmd_class(const std::vector<std::string>& args, const SpecDocument& doc) {
  need(args, 1, 2, "class REGION [WEIGHT] | class CLASS");
  const Decl* d = doc.find(args[0]);
  if (!d) throw ResolveError(args[0], "unknown name '" + args[0] + "'");
  CommandResult r;
  if (const auto* cd = std::get_if<ClassDecl>(d)) {
    auto c = build_class(*cd);
    auto eg = grothring::retract(c, grothring::Euler::Eg);
    auto eb = grothring::retract(c, grothring::Euler::Eb);
    r.payload = {{"class", grothring::to_json(c)}, {"E_g", grothring::to_json(eg)}, {"E_b", grothring::to_json(eb)}};
    r.text = c.str() + "\nE_g: " + eg.str() + "\nE_b: " + eb.str();
    return r;
  }
  auto region = build_region(doc.get<RegionDecl>(args[0]));
  auto c = vfrag::integral_class(region, weight_or_trivial(doc, args, 1, region.arity()));
  r.payload = {{"class", grothring::to_json(c)}};
  r.text = c.str();
  return r;
}

CommandResult cmd_sum(const std::vector<std::string>& args, const SpecDocument& doc) {
  need(args, 2, 2, "sum SET EXPONENT");
  const auto& sd = doc.get<SetDecl>(args[0]);
  const auto& ed = doc.get<ExponentDecl>(args[1]);
  if (sd.vars.size() != ed.vars.size()) throw ResolveError(args[1], "exponent arity does not match the set");
  auto f = genfun::sum_over_set(build_set(sd), genfun::ExponentData(ed.q, ed.T)).canonical();
  CommandResult r;
  r.payload = ratfun_json(f);
  r.text = f.str();
  return r;
}

CommandResult cmd_zeta(const std::vector<std::string>& args, const SpecDocument& doc, const Flags& fl) {
  need(args, 1, 2, "zeta REGION [WEIGHT]");
  auto region = build_region(doc.get<RegionDecl>(args[0]));
  auto w = weight_or_trivial(doc, args, 1, region.arity());
  long rho = pick_rho(doc, fl);
  auto z = vfrag::zeta(region, w, rho, norm(doc)).canonical();
  CommandResult r;
  r.payload = ratfun_json(z);
  r.payload["rho"] = rho;
  r.text = z.str();
  return r;
}

std::string order_str(const std::vector<size_t>& o, const std::vector<std::string>& vars) {
  std::string s;
  for (size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + vars[o[i]];
  return s;
}

CommandResult cmd_fubini(const std::vector<std::string>& args, const SpecDocument& doc, const Flags& fl) {
  need(args, 1, 2, "fubini-check REGION [WEIGHT]");
  const auto& rd = doc.get<RegionDecl>(args[0]);
  auto region = build_region(rd);
  auto w = weight_or_trivial(doc, args, 1, region.arity());
  auto ref = vfrag::zeta(region, w).canonical();
  std::vector<size_t> perm(region.arity());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<size_t>> orders;
  if (!fl.order.empty()) orders.push_back(fl.order);
  else do orders.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  CommandResult r;
  json rows = json::array();
  bool ok = true;
  std::ostringstream os;
  for (const auto& o : orders) {
    auto f = vfrag::integrate_ordered(region, w, o).canonical();
    bool same = f.equals(ref);
    ok = ok && same;
    rows.push_back({{"order", order_str(o, rd.vars)}, {"value", f.str()}, {"agrees", same}});
    os << order_str(o, rd.vars) << ": " << f.str() << (same ? "" : "  (differs)") << "\n";
  }
  r.payload = {{"zeta", ref.str()}, {"orders", rows}, {"verdict", ok ? "pass" : "fail"}};
  r.text = os.str() + (ok ? "pass" : "fail");
  r.exit_code = ok ? kOk : kVerificationFailure;
  return r;
}

CommandResult cmd_cov(const std::vector<std::string>& args, const SpecDocument& doc, const Flags&) {
  need(args, 3, 3, "cov-check REGION WEIGHT MAP");
  auto region = build_region(doc.get<RegionDecl>(args[0]));
  auto w = weight_or_trivial(doc, args, 1, region.arity());
  auto m = build_map(doc.get<MapDecl>(args[2]));
  if (m.arity() != region.arity()) throw ResolveError(args[2], "map arity does not match the region");
  auto push = vfrag::change_of_variables(region, w, m);
  auto before = vfrag::zeta(region, w).canonical();
  auto after = vfrag::zeta(push.region, push.weight).canonical();
  auto v = vfrag::check_measure_preserving(m, {region, w.gamma_form}, {push.region, push.weight.gamma_form});
  bool ok = before.equals(after) && v.ok;
  CommandResult r;
  r.payload = {{"before", before.str()},
               {"after", after.str()},
               {"equal", before.equals(after)},
               {"measure_preserving", v.ok},
               {"jacobian_valuation", m.jacobian_valuation().str(doc.get<RegionDecl>(args[0]).vars)},
               {"verdict", ok ? "pass" : "fail"}};
  if (!v.ok) r.payload["reason"] = v.reason;
  r.text = "before: " + before.str() + "\nafter:  " + after.str() + "\n" + (ok ? "pass" : "fail: " + v.reason);
  r.exit_code = ok ? kOk : kVerificationFailure;
  return r;
}

CommandResult cmd_family(const std::vector<std::string>& args, const SpecDocument& doc, const Flags& fl) {
  need(args, 1, 2, "family REGION [WEIGHT]");
  auto region = build_region(doc.get<RegionDecl>(args[0]));
  auto w = weight_or_trivial(doc, args, 1, region.arity());
  auto rhos = fl.rho.empty() ? doc.params.rho : fl.rho;
  auto rep = vfrag::zeta_family(region, w, rhos);
  json fns = json::array(), per = json::array(), checks = json::array();
  for (const auto& f : rep.functions) {
    json d = json::array();
    for (const auto& x : f.residue) d.push_back(x.get_str());
    fns.push_back({{"m", f.m}, {"piece", f.piece}, {"residue", d}, {"R", f.R.canonical().str()}});
  }
  bool ok = rep.certified();
  for (const auto& p : rep.per_rho) {
    json s = json::array();
    for (const auto& x : p.summands) s.push_back({{"m", x.m}, {"function", x.index}, {"power", x.power}});
    per.push_back({{"rho", p.rho}, {"summands", s}, {"zeta", p.direct.canonical().str()}, {"reproduces", p.reproduces}});
    ok = ok && p.reproduces;
  }
  for (const auto& c : rep.checks) checks.push_back({{"rho", c.rho}, {"rho2", c.rho2}, {"ok", c.ok}});
  CommandResult r;
  r.payload = {{"functions", fns}, {"per_rho", per}, {"scaling_checks", checks}, {"certified", ok}};
  r.text = rep.str();
  r.exit_code = ok ? kOk : kVerificationFailure;
  return r;
}

CommandResult cmd_oracle(const std::vector<std::string>& args, const SpecDocument& doc, const Flags& fl) {
  need(args, 1, 2, "oracle-check REGION [WEIGHT]");
  auto region = build_region(doc.get<RegionDecl>(args[0]));
  auto w = weight_or_trivial(doc, args, 1, region.arity());
  padic::LocalFieldConfig cfg;
  if (fl.kind == "qp") cfg = padic::LocalFieldConfig::qp(fl.p, fl.precision.value_or(default_precision()));
  else if (fl.kind == "laurent")
    cfg = padic::LocalFieldConfig::laurent(fl.p, fl.delta, fl.precision.value_or(default_precision()));
  else throw ResolveError(fl.kind, "unknown field kind '" + fl.kind + "' (qp or laurent)");
  if (fl.kind == "qp" && fl.delta != 1) throw ResolveError("delta", "Q_p has residue degree 1");
  RatVec kappa = fl.kappa.empty() ? doc.params.kappa : fl.kappa;
  if (kappa.size() != w.num_t())
    throw ResolveError("kappa", "expected " + std::to_string(w.num_t()) + " kappa values, got " + std::to_string(kappa.size()));
  auto z = vfrag::zeta(region, w);
  auto rep = padic::compare(z, region, w, kappa, cfg);
  CommandResult r;
  r.payload = rep.to_json();
  r.payload["field"] = cfg.str();
  r.payload["zeta"] = z.canonical().str();
  if (fl.decimal)
    r.payload["decimal"] = {{"truncated", to_decimal(rep.truncated, *fl.decimal)},
                            {"symbolic", to_decimal(rep.symbolic, *fl.decimal)},
                            {"tail_bound", to_decimal(rep.tail, *fl.decimal)}};
  r.text = cfg.str() + "\nzeta:      " + z.canonical().str() + "\nsymbolic:  " + rat_display(rep.symbolic, fl) +
           "\ntruncated: " + rat_display(rep.truncated, fl) + "\ntail:      " + rat_display(rep.tail, fl) +
           "\ndiff:      " + rat_display(rep.discrepancy(), fl) + "\n" + (rep.pass ? "pass" : "fail");
  r.exit_code = rep.pass ? kOk : kVerificationFailure;
  return r;
}

}  // namespace

CommandResult run(const std::string& command, const std::vector<std::string>& args, const SpecDocument& doc,
                  const Flags& flags) {
  CommandResult r;
  try {
    if (command == "qe") r = cmd_qe(args, doc);
    else if (command == "euler") r = cmd_euler(args, doc);
    else if (command == "class") r = cmd_class(args, doc);
    else if (command == "sum") r = cmd_sum(args, doc);
    else if (command == "zeta") r = cmd_zeta(args, doc, flags);
    else if (command == "fubini-check") r = cmd_fubini(args, doc, flags);
    else if (command == "cov-check") r = cmd_cov(args, doc, flags);
    else if (command == "family") r = cmd_family(args, doc, flags);
    else if (command == "oracle-check") r = cmd_oracle(args, doc, flags);
    else if (command == "print") {
      r.text = print_spec(doc);
      r.payload = {{"document", r.text}};
    } else {
      throw ResolveError(command, "unknown command '" + command + "'");
    }
  } catch (const ResolveError&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw EngineError(command + ": " + e.what());
  }
  std::string echo = command;
  for (const auto& a : args) echo += " " + a;
  r.command = echo;
  return r;
}

}  // namespace igusa::cli
