#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "igusa/cli/document.hpp"
#include "igusa/genfun/ratfun.hpp"

namespace igusa::cli {

enum ExitCode { kOk = 0, kParseError = 2, kEngineError = 3, kVerificationFailure = 4 };

struct Flags {
  bool json = false;
  std::optional<int> decimal;     // display only
  std::vector<long> rho;          // empty: use the document's
  std::vector<Rat> kappa;         // empty: use the document's
  std::vector<size_t> order;      // fubini-check: a single order instead of all of them
  long p = 3;
  int delta = 1;
  std::optional<int> precision;   // empty: default_precision()
  std::string kind = "qp";
};

// IGUSA_PRECISION if set to a positive integer, else 10.
int default_precision();

struct CommandResult {
  std::string command;
  nlohmann::json payload;
  std::string text;
  int exit_code = kOk;
  std::string render(bool json) const;
};

// Wraps engine failures with the command that raised them.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CommandResult run(const std::string& command, const std::vector<std::string>& args, const SpecDocument& doc,
                  const Flags& flags);

nlohmann::json ratfun_json(const genfun::RatFun& f);

}  // namespace igusa::cli
