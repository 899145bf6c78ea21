// Copyright (c) 2026 The igusa authors. Licensed under the MIT license.
#include <algorithm>
#include <set>

#include "igusa/cli/document.hpp"
#include "lexer.hpp"

namespace igusa::cli {

namespace {

using grothring::ResPoly;
using vfrag::AcCond;

const std::set<std::string> kFormulaWords = {"and", "or", "not", "exists", "true", "false", "mod", "when"};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  SpecDocument document() {
    SpecDocument doc;
    while (peek().kind != Token::Kind::End) {
      if (accept("param")) {
        param(doc.params);
      } else if (peek().is("set") || peek().is("qset")) {
        doc.decls.push_back(set_decl());
      } else if (accept("region")) {
        doc.decls.push_back(region_decl());
      } else if (accept("weight")) {
        doc.decls.push_back(weight_decl());
      } else if (accept("exponent")) {
        doc.decls.push_back(exponent_decl());
      } else if (accept("map")) {
        doc.decls.push_back(map_decl());
      } else if (accept("class")) {
        doc.decls.push_back(class_decl());
      } else {
        fail({"'param'", "'set'", "'qset'", "'region'", "'weight'", "'exponent'", "'map'", "'class'"});
      }
    }
    doc.resolve();
    return doc;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(const std::string& s) {
    if (!peek().is(s)) return false;
    ++pos_;
    return true;
  }
  static std::string describe(const Token& t) {
    if (t.kind == Token::Kind::End) return "end of input";
    return "'" + t.text + "'";
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().loc, std::move(expected), describe(peek()));
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail({"'" + s + "'"});
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail({what});
    return next().text;
  }
  Int integer() {
    bool neg = accept("-");
    if (peek().kind != Token::Kind::Number) fail({"integer"});
    Int v(next().text);
    return neg ? Int(-v) : v;
  }
  Rat rational() {
    bool neg = accept("-");
    if (peek().kind != Token::Kind::Number) fail({"number"});
    Rat v(Int(next().text));
    if (accept("/")) {
      if (peek().kind != Token::Kind::Number) fail({"denominator"});
      Int d(next().text);
      if (d == 0) throw ParseError(peek().loc, {}, "", "zero denominator");
      v /= Rat(d);
    }
    v.canonicalize();
    return neg ? Rat(-v) : v;
  }

  // Identifiers of the block starting at the current '{' (not consumed), in order of first use.
  std::vector<std::string> prescan(const std::set<std::string>& reserved) const {
    std::vector<std::string> out;
    std::set<std::string> bound;
    int depth = 0;
    for (size_t k = pos_; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.is("{")) ++depth;
      if (t.is("}") && --depth == 0) break;
      if (t.kind != Token::Kind::Ident) continue;
      if (k > 0 && toks_[k - 1].is("exists")) {
        bound.insert(t.text);
        continue;
      }
      if (kFormulaWords.count(t.text) || reserved.count(t.text) || bound.count(t.text)) continue;
      if (std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
    }
    return out;
  }

  std::vector<std::string> var_list(const std::set<std::string>& reserved) {
    std::vector<std::string> vars;
    if (accept("(")) {
      if (!accept(")")) {
        do vars.push_back(ident("variable name"));
        while (accept(","));
        expect(")");
      }
      for (size_t i = 0; i < vars.size(); ++i)
        if (std::find(vars.begin() + static_cast<long>(i) + 1, vars.end(), vars[i]) != vars.end())
          throw ResolveError(vars[i], "repeated variable '" + vars[i] + "'");
      return vars;
    }
    if (!peek().is("{")) fail({"'('", "'{'"});
    return prescan(reserved);
  }

  void param(Params& p) {
    std::string key = ident("parameter name");
    expect("=");
    if (key == "rho") {
      p.rho.clear();
      bool list = accept("[");
      do {
        Int r = integer();
        if (r <= 0) throw ParseError(peek().loc, {}, "", "rho values must be positive");
        p.rho.push_back(r.get_si());
      } while (list && accept(","));
      if (list) expect("]");
    } else if (key == "kappa") {
      p.kappa.clear();
      bool list = accept("[");
      do p.kappa.push_back(rational());
      while (list && accept(","));
      if (list) expect("]");
    } else if (key == "normalization") {
      if (accept("ideal")) p.normalization = "ideal";
      else if (accept("classical")) p.normalization = "classical";
      else fail({"'ideal'", "'classical'"});
    } else {
      throw ResolveError(key, "unknown parameter '" + key + "'");
    }
    expect(";");
  }

  // ---- formulas over `names`
  Affine linear(const std::vector<std::string>& names) {
    Affine a(names.size());
    for (bool first = true;; first = false) {
      Rat sign = 1;
      if (accept("-")) sign = -1;
      else if (!accept("+") && !first) break;
      if (peek().kind == Token::Kind::Number) {
        Rat c = rational();
        if (accept("*")) a.coef[var_index(names)] += sign * c;
        else a.constant += sign * c;
      } else if (peek().kind == Token::Kind::Ident && !kFormulaWords.count(peek().text)) {
        a.coef[var_index(names)] += sign;
      } else {
        fail({"number", "variable"});
      }
    }
    return a;
  }

  size_t var_index(const std::vector<std::string>& names) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail({"variable"});
    // innermost binding wins
    for (size_t i = names.size(); i-- > 0;)
      if (names[i] == t.text) {
        ++pos_;
        return i;
      }
    throw ResolveError(t.text, "line " + std::to_string(t.loc.line) + ", column " + std::to_string(t.loc.col) +
                                   ": unknown variable '" + t.text + "'");
  }

  Formula formula(std::vector<std::string>& names) {
    std::vector<Formula> kids{conjunction(names)};
    while (accept("or")) kids.push_back(conjunction(names));
    return kids.size() == 1 ? kids[0] : Formula::disj(kids);
  }
  Formula conjunction(std::vector<std::string>& names) {
    std::vector<Formula> kids{unary(names)};
    while (accept("and")) kids.push_back(unary(names));
    return kids.size() == 1 ? kids[0] : Formula::conj(kids);
  }
  Formula unary(std::vector<std::string>& names) {
    if (accept("not")) return Formula::neg(unary(names));
    if (accept("exists")) {
      std::string v = ident("bound variable");
      expect(".");
      names.push_back(v);
      Formula body = formula(names);
      names.pop_back();
      return Formula::exists(v, body);
    }
    if (accept("true")) return Formula::truth(true);
    if (accept("false")) return Formula::truth(false);
    if (accept("(")) {
      Formula f = formula(names);
      expect(")");
      return f;
    }
    return atom(names);
  }
  Formula atom(std::vector<std::string>& names) {
    Affine lhs = linear(names);
    static const std::vector<std::pair<std::string, Rel>> rels = {
        {">=", Rel::GE}, {">", Rel::GT}, {"<=", Rel::LE}, {"<", Rel::LT}, {"==", Rel::EQ}, {"=", Rel::EQ}, {"!=", Rel::NE}};
    for (const auto& [s, r] : rels) {
      if (!accept(s)) continue;
      Affine rhs = linear(names);
      Affine t = lhs - rhs;
      if (r == Rel::EQ && peek().is("(") && peek(1).is("mod")) {
        pos_ += 2;
        Int m = integer();
        if (m <= 0) throw ParseError(peek().loc, {}, "", "modulus must be positive");
        expect(")");
        return Formula::atom(t, Rel::CONG, m);
      }
      return Formula::atom(t, r);
    }
    fail({"'>='", "'>'", "'<='", "'<'", "'='", "'!='"});
  }
  Formula block_formula(std::vector<std::string> names) {
    expect("{");
    Formula f = formula(names);
    expect("}");
    return f;
  }

  // ---- residue polynomials
  ResPoly respoly() {
    ResPoly p = resterm();
    for (;;) {
      if (accept("+")) p = p + resterm();
      else if (accept("-")) p = p - resterm();
      else return p;
    }
  }
  ResPoly resterm() {
    bool neg = accept("-");
    ResPoly p = resfactor();
    while (accept("*")) p = p * resfactor();
    return neg ? -p : p;
  }
  ResPoly resfactor() {
    ResPoly base;
    if (peek().kind == Token::Kind::Number) {
      base = ResPoly::constant(Int(next().text));
    } else if (accept("(")) {
      base = respoly();
      expect(")");
    } else if (peek().kind == Token::Kind::Ident) {
      const Token& t = peek();
      if (t.text != "u" && t.text != "v" && !grothring::symbol_known(t.text))
        throw ResolveError(t.text, "line " + std::to_string(t.loc.line) + ", column " + std::to_string(t.loc.col) +
                                       ": unknown residue symbol '" + t.text + "'");
      base = ResPoly::var(next().text);
    } else {
      fail({"integer", "'u'", "'v'", "residue symbol", "'('"});
    }
    if (accept("^")) {
      if (peek().kind != Token::Kind::Number) fail({"exponent"});
      base = base.pow(static_cast<unsigned>(std::stoul(next().text)));
    }
    return base;
  }

  // ---- declarations
  SetDecl set_decl() {
    SetDecl d;
    d.rational = next().text == "qset";
    d.name = ident("set name");
    d.vars = var_list({});
    d.formula = block_formula(d.vars);
    return d;
  }

  RegionDecl region_decl() {
    RegionDecl d;
    d.name = ident("region name");
    std::set<std::string> reserved = {"strata", "zeros", "gamma", "fiber", "ac", "any", "u", "v"};
    d.vars = var_list(reserved);
    expect("{");
    while (accept("strata")) {
      StratumDecl s;
      expect("{");
      bool has_zeros = accept("zeros");
      if (has_zeros) expect("[");
      if (has_zeros && !peek().is("]")) {
        do {
          const Token& t = peek();
          std::string z = ident("coordinate name");
          if (std::find(d.vars.begin(), d.vars.end(), z) == d.vars.end())
            throw ResolveError(z, "line " + std::to_string(t.loc.line) + ", column " + std::to_string(t.loc.col) +
                                      ": unknown coordinate '" + z + "'");
          s.zeros.push_back(z);
        } while (accept(","));
      }
      if (has_zeros) {
        expect("]");
        expect(";");
      }
      std::vector<std::string> support;
      for (const auto& v : d.vars)
        if (std::find(s.zeros.begin(), s.zeros.end(), v) == s.zeros.end()) support.push_back(v);
      expect("gamma");
      s.gamma = block_formula(support);
      accept(";");
      while (accept("fiber")) {
        FiberDecl f;
        if (accept("ac")) {
          expect("[");
          std::vector<AcCond> conds;
          if (!peek().is("]")) {
            do {
              if (accept("any")) conds.push_back(AcCond::any());
              else if (accept("=")) conds.push_back(AcCond::eq(integer().get_si()));
              else if (accept("!=")) conds.push_back(AcCond::ne(integer().get_si()));
              else fail({"'any'", "'='", "'!='"});
            } while (accept(","));
          }
          expect("]");
          if (conds.size() != support.size())
            throw ResolveError(d.name, "region '" + d.name + "': expected " + std::to_string(support.size()) +
                                           " angular conditions, got " + std::to_string(conds.size()));
          f.ac = conds;
          f.poly = vfrag::ac_class(conds).component(static_cast<int>(conds.size()));
        } else {
          f.poly = respoly();
        }
        if (accept("when")) f.when = block_formula(support);
        expect(";");
        s.fibers.push_back(std::move(f));
      }
      expect("}");
      d.strata.push_back(std::move(s));
    }
    if (!accept("}")) fail({"'strata'", "'}'"});
    return d;
  }

  WeightDecl weight_decl() {
    WeightDecl d;
    d.name = ident("weight name");
    d.vars = var_list({"kappa", "omega"});
    expect("{");
    while (!accept("}")) {
      FormEntry e;
      if (accept("kappa")) {
        Int i = integer();
        if (i < 1) throw ParseError(peek().loc, {}, "", "kappa index must be at least 1");
        e.index = i.get_ui();
      } else if (accept("omega")) {
        e.index = 0;
      } else {
        fail({"'kappa'", "'omega'", "'}'"});
      }
      expect(":");
      e.form = linear(d.vars);
      if (accept("when")) e.when = block_formula(d.vars);
      expect(";");
      d.entries.push_back(std::move(e));
    }
    return d;
  }

  ExponentDecl exponent_decl() {
    ExponentDecl d;
    d.name = ident("exponent name");
    std::set<std::string> reserved = {"q"};
    for (int i = 1; i <= 9; ++i) reserved.insert("T" + std::to_string(i));
    d.vars = var_list(reserved);
    expect("{");
    expect("q");
    expect(":");
    d.q = linear(d.vars);
    expect(";");
    while (!accept("}")) {
      std::string expected = "T" + std::to_string(d.T.size() + 1);
      if (!accept(expected)) fail({"'" + expected + "'", "'}'"});
      expect(":");
      d.T.push_back(linear(d.vars));
      expect(";");
    }
    return d;
  }

  IntVec int_vector() {
    IntVec v;
    expect("[");
    if (!peek().is("]")) {
      do v.push_back(integer());
      while (accept(","));
    }
    expect("]");
    return v;
  }

  MapDecl map_decl() {
    MapDecl d;
    d.name = ident("map name");
    d.vars = var_list({"matrix", "shift"});
    expect("{");
    expect("matrix");
    expect("[");
    do d.matrix.push_back(int_vector());
    while (accept(","));
    expect("]");
    expect(";");
    if (accept("shift")) {
      d.shift = int_vector();
      expect(";");
    } else {
      d.shift.assign(d.matrix.size(), Int(0));
    }
    expect("}");
    return d;
  }

  ClassDecl class_decl() {
    ClassDecl d;
    d.name = ident("class name");
    expect("{");
    while (accept("term")) {
      ClassTerm t;
      t.x = respoly();
      expect("on");
      expect("(");
      if (!accept(")")) {
        do t.vars.push_back(ident("variable name"));
        while (accept(","));
        expect(")");
      }
      t.gamma = block_formula(t.vars);
      expect(";");
      d.terms.push_back(std::move(t));
    }
    if (!accept("}")) fail({"'term'", "'}'"});
    return d;
  }
};

}  // namespace

SpecDocument parse_spec(const std::string& text) { return Parser(text).document(); }

}  // namespace igusa::cli
