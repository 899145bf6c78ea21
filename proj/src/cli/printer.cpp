#include <algorithm>
#include <sstream>

#include "igusa/cli/document.hpp"

namespace igusa::cli {

namespace {

std::string vars_str(const std::vector<std::string>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s + ")";
}

std::string ac_str(const vfrag::AcCond& c) {
  switch (c.kind) {
    case vfrag::AcCond::Kind::Any: return "any";
    case vfrag::AcCond::Kind::Eq: return "=" + std::to_string(c.c);
    case vfrag::AcCond::Kind::Ne: return "!=" + std::to_string(c.c);
  }
  return "";
}

std::string ints(const IntVec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

struct Printer {
  std::ostringstream os;

  void operator()(const SetDecl& d) {
    os << (d.rational ? "qset " : "set ") << d.name << vars_str(d.vars) << " { " << d.formula.str(d.vars) << " }\n";
  }
  void operator()(const RegionDecl& d) {
    os << "region " << d.name << vars_str(d.vars) << " {\n";
    for (const auto& s : d.strata) {
      std::vector<std::string> support;
      for (const auto& v : d.vars)
        if (std::find(s.zeros.begin(), s.zeros.end(), v) == s.zeros.end()) support.push_back(v);
      os << "  strata {\n    zeros [";
      for (size_t i = 0; i < s.zeros.size(); ++i) os << (i ? ", " : "") << s.zeros[i];
      os << "];\n    gamma { " << s.gamma.str(support) << " }\n";
      for (const auto& f : s.fibers) {
        os << "    fiber ";
        if (f.ac) {
          os << "ac [";
          for (size_t i = 0; i < f.ac->size(); ++i) os << (i ? ", " : "") << ac_str((*f.ac)[i]);
          os << "]";
        } else {
          os << (f.poly.is_zero() ? std::string("0") : f.poly.str());
        }
        if (f.when) os << " when { " << f.when->str(support) << " }";
        os << ";\n";
      }
      os << "  }\n";
    }
    os << "}\n";
  }
  void operator()(const WeightDecl& d) {
    os << "weight " << d.name << vars_str(d.vars) << " {\n";
    for (const auto& e : d.entries) {
      os << "  " << (e.index == 0 ? std::string("omega") : "kappa " + std::to_string(e.index)) << ": "
         << e.form.str(d.vars);
      if (e.when) os << " when { " << e.when->str(d.vars) << " }";
      os << ";\n";
    }
    os << "}\n";
  }
  void operator()(const ExponentDecl& d) {
    os << "exponent " << d.name << vars_str(d.vars) << " {\n  q: " << d.q.str(d.vars) << ";\n";
    for (size_t i = 0; i < d.T.size(); ++i) os << "  T" << i + 1 << ": " << d.T[i].str(d.vars) << ";\n";
    os << "}\n";
  }
  void operator()(const MapDecl& d) {
    os << "map " << d.name << vars_str(d.vars) << " {\n  matrix [";
    for (size_t i = 0; i < d.matrix.size(); ++i) os << (i ? ", " : "") << ints(d.matrix[i]);
    os << "];\n  shift " << ints(d.shift) << ";\n}\n";
  }
  void operator()(const ClassDecl& d) {
    os << "class " << d.name << " {\n";
    for (const auto& t : d.terms)
      os << "  term " << (t.x.is_zero() ? std::string("0") : t.x.str()) << " on " << vars_str(t.vars) << " { "
         << t.gamma.str(t.vars) << " };\n";
    os << "}\n";
  }
};

}  // namespace

std::string print_spec(const SpecDocument& doc) {
  Printer p;
  p.os << "param rho = [";
  for (size_t i = 0; i < doc.params.rho.size(); ++i) p.os << (i ? ", " : "") << doc.params.rho[i];
  p.os << "];\n";
  if (!doc.params.kappa.empty()) {
    p.os << "param kappa = [";
    for (size_t i = 0; i < doc.params.kappa.size(); ++i) p.os << (i ? ", " : "") << doc.params.kappa[i].get_str();
    p.os << "];\n";
  }
  p.os << "param normalization = " << doc.params.normalization << ";\n";
  for (const auto& d : doc.decls) {
    p.os << "\n";
    std::visit(p, d);
  }
  return p.os.str();
}

}  // namespace igusa::cli
