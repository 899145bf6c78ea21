#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "igusa/genfun/ratfun.hpp"
#include "igusa/padic/field.hpp"
#include "igusa/vfrag/region.hpp"

namespace igusa::padic {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Enumeration {
  Explicit,  // every residue mod uniformizer^N
  Grouped    // residues grouped by (valuation, angular component), with multiplicities
};

struct Truncation {
  Rat value;             // sum over the resolved residues
  Rat tail;              // bound on the mass of the deep residues
  Int representatives;   // residues enumerated, q^{nN}
};

// Integrand q^{-sum_i kappa_i f_i - omega} |dX| with Haar measure vol(maximal ideal) = 1.
Truncation truncate(const vfrag::MonomialRegion& A, const vfrag::ValWeight& w, const RatVec& kappa,
                    const LocalFieldConfig& cfg, Enumeration mode = Enumeration::Grouped, unsigned threads = 0);

Rat truncated_zeta(const vfrag::MonomialRegion& A, const vfrag::ValWeight& w, const RatVec& kappa,
                   const LocalFieldConfig& cfg);
Rat tail_bound(const vfrag::MonomialRegion& A, const vfrag::ValWeight& w, const RatVec& kappa,
               const LocalFieldConfig& cfg);

struct OracleReport {
  Rat truncated, tail, symbolic;
  bool pass = false;
  Rat discrepancy() const;
  std::string str() const;
  nlohmann::json to_json() const;
};

// symbolic evaluated at q = cfg.q(), T_i = q^{-kappa_i}; kappa must be integral.
OracleReport compare(const genfun::RatFun& symbolic, const vfrag::MonomialRegion& A, const vfrag::ValWeight& w,
                     const RatVec& kappa, const LocalFieldConfig& cfg, Enumeration mode = Enumeration::Grouped);

}  // namespace igusa::padic
