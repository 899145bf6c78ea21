#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "igusa/core/formula.hpp"
#include "igusa/core/intmat.hpp"
#include "igusa/grothring/resclass.hpp"
#include "igusa/vfrag/region.hpp"

namespace igusa::cli {

struct Loc {
  int line = 1, col = 1;
  bool operator==(const Loc&) const = default;
};

// Syntax error with location and the set of tokens that would have been accepted.
struct ParseError : std::runtime_error {
  Loc loc;
  std::vector<std::string> expected;
  std::string found;
  ParseError(Loc l, std::vector<std::string> exp, std::string f, const std::string& msg = "");
};

// Well-formed syntax referring to something inconsistent (unknown name, arity clash...).
struct ResolveError : std::runtime_error {
  std::string name;
  ResolveError(std::string n, const std::string& msg) : std::runtime_error(msg), name(std::move(n)) {}
};

// `set` is read over Z (Presburger), `qset` over Q (semilinear).
struct SetDecl {
  std::string name;
  std::vector<std::string> vars;
  Formula formula;
  bool rational = false;
  bool operator==(const SetDecl&) const = default;
};

struct FiberDecl {
  grothring::ResPoly poly;
  std::optional<std::vector<vfrag::AcCond>> ac;
  std::optional<Formula> when;
  bool operator==(const FiberDecl&) const = default;
};

struct StratumDecl {
  std::vector<std::string> zeros;
  Formula gamma;  // over the non-zero coordinates, in declaration order
  std::vector<FiberDecl> fibers;
  bool operator==(const StratumDecl&) const = default;
};

struct RegionDecl {
  std::string name;
  std::vector<std::string> vars;
  std::vector<StratumDecl> strata;
  bool operator==(const RegionDecl&) const = default;
};

// One affine piece of a weight form; index 0 is omega, i >= 1 is kappa i.
struct FormEntry {
  size_t index = 0;
  Affine form;
  std::optional<Formula> when;
  bool operator==(const FormEntry&) const = default;
};

struct WeightDecl {
  std::string name;
  std::vector<std::string> vars;
  std::vector<FormEntry> entries;
  bool operator==(const WeightDecl&) const = default;
};

// Exponent data for `sum`: q^{-q(x)} * prod Ti^{Ti(x)}.
struct ExponentDecl {
  std::string name;
  std::vector<std::string> vars;
  Affine q;
  std::vector<Affine> T;
  bool operator==(const ExponentDecl&) const = default;
};

struct MapDecl {
  std::string name;
  std::vector<std::string> vars;
  IntMat matrix;
  IntVec shift;
  bool operator==(const MapDecl&) const = default;
};

// Sum of x (x) (I, id) with I a Q-set of grade deg(x).
struct ClassTerm {
  grothring::ResPoly x;
  std::vector<std::string> vars;
  Formula gamma;
  bool operator==(const ClassTerm&) const = default;
};

struct ClassDecl {
  std::string name;
  std::vector<ClassTerm> terms;
  bool operator==(const ClassDecl&) const = default;
};

struct Params {
  std::vector<long> rho{1};
  std::vector<Rat> kappa;
  std::string normalization = "ideal";  // vol(maximal ideal) = 1, or "classical"
  bool operator==(const Params&) const = default;
};

using Decl = std::variant<SetDecl, RegionDecl, WeightDecl, ExponentDecl, MapDecl, ClassDecl>;

std::string decl_name(const Decl& d);
std::string decl_kind(const Decl& d);

struct SpecDocument {
  Params params;
  std::vector<Decl> decls;

  bool operator==(const SpecDocument&) const = default;
  const Decl* find(const std::string& name) const;
  template <class T>
  const T& get(const std::string& name) const;
  // Unique names and consistent arities; throws ResolveError.
  void resolve() const;
};

template <class T>
const T& SpecDocument::get(const std::string& name) const {
  const Decl* d = find(name);
  if (!d) throw ResolveError(name, "unknown name '" + name + "'");
  if (const T* t = std::get_if<T>(d)) return *t;
  throw ResolveError(name, "'" + name + "' is a " + decl_kind(*d) + ", not the expected kind of declaration");
}

SpecDocument parse_spec(const std::string& text);
std::string print_spec(const SpecDocument& doc);

// Engine objects built from declarations.
presburger::PresburgerSet build_set(const SetDecl& d);
semilinear::SemilinearSet build_qset(const SetDecl& d);
vfrag::MonomialRegion build_region(const RegionDecl& d);
vfrag::ValWeight build_weight(const WeightDecl& d);
vfrag::MonomialMap build_map(const MapDecl& d);

}  // namespace igusa::cli
