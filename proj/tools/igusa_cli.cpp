// SPDX-License-Identifier: MIT
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "igusa/cli/commands.hpp"

using namespace igusa;
using namespace igusa::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact zeta functions, Euler characteristics and volume classes"};
  std::string file, command;
  std::vector<std::string> names;
  Flags fl;
  int decimal = -1;
  int precision = 0;
  std::string kappa;
  std::string order;
  app.add_option("spec", file, "document file ('-' for stdin)")->required();
  app.add_option("command", command,
                 "qe | euler | class | sum | zeta | fubini-check | cov-check | family | oracle-check | print")
      ->required();
  app.add_option("names", names, "declared names the command works on");
  app.add_flag("--json", fl.json, "machine-readable output");
  app.add_option("--decimal", decimal, "also show decimal approximations with this many digits");
  app.add_option("--rho", fl.rho, "rho values (default: from the document)")->delimiter(',');
  app.add_option("--kappa", kappa, "kappa values, comma separated rationals (default: from the document)");
  app.add_option("--order", order, "fubini-check: one coordinate order, comma separated indices");
  app.add_option("--p", fl.p, "residue characteristic");
  app.add_option("--delta", fl.delta, "residue degree (laurent only)");
  app.add_option("--precision", precision, "work modulo uniformizer^N (default: IGUSA_PRECISION or 10)");
  app.add_option("--kind", fl.kind, "qp | laurent");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }
  if (decimal >= 0) fl.decimal = decimal;
  if (precision > 0) fl.precision = precision;
  try {
    std::stringstream ks(kappa);
    for (std::string item; std::getline(ks, item, ',');) fl.kappa.emplace_back(item);
    for (auto& k : fl.kappa) k.canonicalize();
    std::stringstream os(order);
    for (std::string item; std::getline(os, item, ',');) fl.order.push_back(std::stoul(item));
  } catch (const std::exception&) {
    std::cerr << "error: malformed --kappa or --order list\n";
    return kParseError;
  }

  std::string text;
  if (file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "error: cannot read " << file << "\n";
      return kParseError;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  try {
    SpecDocument doc = parse_spec(text);
    CommandResult r = run(command, names, doc, fl);
    std::cout << r.render(fl.json);
    return r.exit_code;
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kParseError;
  } catch (const ResolveError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEngineError;
  }
}
