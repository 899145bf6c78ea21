#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "igusa/cli/commands.hpp"
#include "igusa/vfrag/integrate.hpp"

using namespace igusa;
using namespace igusa::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kData = IGUSA_TEST_DATA;

// -- random documents for the round trip
struct TextGen {
  std::mt19937_64 g;
  explicit TextGen(uint64_t seed) : g(seed) {}
  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

  std::string linear(const std::vector<std::string>& vars) {
    std::string s;
    int terms = static_cast<int>(pick(1, 3));
    for (int i = 0; i < terms; ++i) {
      long c = pick(-4, 4);
      if (c == 0) c = 1;
      std::string v = vars[static_cast<size_t>(pick(0, static_cast<long>(vars.size()) - 1))];
      s += (i == 0 ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      if (std::abs(c) != 1) s += std::to_string(std::abs(c)) + "*";
      s += v;
    }
    if (long k = pick(-5, 5)) s += (k < 0 ? " - " : " + ") + std::to_string(std::abs(k));
    return s;
  }
  std::string formula(std::vector<std::string> vars, int depth, int& fresh) {
    long k = depth <= 0 ? 0 : pick(0, 5);
    static const char* rels[] = {">=", ">", "<=", "<", "=", "!="};
    switch (k) {
      case 1: return "(" + formula(vars, depth - 1, fresh) + " and " + formula(vars, depth - 1, fresh) + ")";
      case 2: return "(" + formula(vars, depth - 1, fresh) + " or " + formula(vars, depth - 1, fresh) + ")";
      case 3: return "not " + formula(vars, depth - 1, fresh);
      case 4: {
        std::string b = "b" + std::to_string(fresh++);
        vars.push_back(b);
        return "(exists " + b + ". " + formula(vars, depth - 1, fresh) + ")";
      }
      case 5: return linear(vars) + " = " + std::to_string(pick(0, 3)) + " (mod " + std::to_string(pick(2, 6)) + ")";
      default: return linear(vars) + " " + rels[pick(0, 5)] + " " + std::to_string(pick(-3, 3));
    }
  }
  std::string document() {
    std::vector<std::string> vars = {"x", "y", "z"};
    vars.resize(static_cast<size_t>(pick(1, 3)));
    std::string list = "(";
    for (size_t i = 0; i < vars.size(); ++i) list += (i ? ", " : "") + vars[i];
    list += ")";
    int fresh = 0;
    std::ostringstream os;
    os << "param rho = [" << pick(1, 4) << ", " << pick(1, 4) << "];\n";
    os << "param kappa = [" << pick(1, 3) << "/" << pick(1, 3) << "];\n";
    os << "set S" << list << " { " << formula(vars, 3, fresh) << " }\n";
    os << "qset Q" << list << " { " << formula(vars, 2, fresh) << " }\n";
    os << "weight W" << list << " { kappa 1: " << linear(vars) << " when { " << linear(vars) << " >= 0 }; kappa 1: "
       << linear(vars) << " when { " << linear(vars) << " < 0 }; omega: " << linear(vars) << "; }\n";
    os << "exponent E" << list << " { q: " << linear(vars) << "; T1: " << linear(vars) << "; }\n";
    os << "region R" << list << " { strata { zeros [];\n gamma { ";
    for (size_t i = 0; i < vars.size(); ++i) os << (i ? " and " : "") << vars[i] << " >= " << pick(0, 2);
    os << " }\n fiber ac [";
    for (size_t i = 0; i < vars.size(); ++i) {
      long a = pick(0, 2);
      os << (i ? ", " : "") << (a == 0 ? "any" : a == 1 ? "= " + std::to_string(pick(1, 4)) : "!= " + std::to_string(pick(1, 4)));
    }
    os << "] when { " << vars[0] << " >= 3 };\n fiber u^2 - 3*u*v + 2 when { " << vars[0] << " < 3 }; } }\n";
    if (vars.size() == 2) os << "map M(x, y) { matrix [[1, " << pick(0, 3) << "], [0, 1]]; shift [" << pick(0, 2) << ", 0]; }\n";
    os << "class C { term u - v on (g) { g > 0 }; term 2*u^2 - u*v on (g, h) { 0 <= g and g < h }; }\n";
    return os.str();
  }
};

}  // namespace

TEST_CASE("one-cell set and congruence atoms") {
  auto doc = parse_spec("set D { x >= 0 and x == 1 (mod 2) }");
  const auto& d = doc.get<SetDecl>("D");
  CHECK(d.vars == std::vector<std::string>{"x"});
  auto s = build_set(d);
  CHECK(s.cells().size() == 1);
  CHECK(s.contains({Int(1)}));
  CHECK(s.contains({Int(7)}));
  CHECK_FALSE(s.contains({Int(2)}));
  CHECK_FALSE(s.contains({Int(-1)}));
  // the short and long spellings agree
  CHECK(parse_spec("set D { x >= 0 and x = 1 (mod 2) }") == doc);
}

TEST_CASE("diagnostics carry line, column and the expected tokens") {
  try {
    parse_spec("set D { x >= }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.loc.line == 1);
    CHECK(e.loc.col == 14);
    CHECK(e.found == "'}'");
    CHECK_FALSE(e.expected.empty());
  }
  try {
    parse_spec("param rho = [1];\n\nset D (x) {\n  x >= 0 and\n}\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.loc.line == 5);
    CHECK(e.loc.col == 1);
  }
  try {
    parse_spec("set D (x) { x >= 0 } set D (y) { y < 0 }");
    FAIL("no error");
  } catch (const ResolveError& e) {
    CHECK(e.name == "D");
  }
  try {
    parse_spec("set D (x) { x + y >= 0 }");
    FAIL("no error");
  } catch (const ResolveError& e) {
    CHECK(e.name == "y");
    CHECK(std::string(e.what()).find("column 17") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec("map M (x, y) { matrix [[1, 0, 0], [0, 1]]; }"), ResolveError);
  CHECK_THROWS_AS(parse_spec("weight W (x) { kappa 0: x; }"), ParseError);
  CHECK_THROWS_AS(parse_spec("region R (x) { strata { gamma { x >= 0 } fiber ac [any, any]; } }"), ResolveError);
  CHECK_THROWS_AS(parse_spec("set D { x >= 1/0 }"), ParseError);
  CHECK_THROWS_AS(parse_spec("frobnicate D { }"), ParseError);
}

TEST_CASE("golden parse of the unit ball with weight kappa*gamma") {
  auto doc = parse_spec(slurp(kData + "/ball.igs"));
  CHECK(print_spec(doc) == slurp(kData + "/ball.golden"));
  CHECK(doc.params.rho == std::vector<long>{1});
  CHECK(doc.params.kappa == std::vector<Rat>{Rat(1)});

  const auto& r = doc.get<RegionDecl>("O");
  REQUIRE(r.strata.size() == 1);
  CHECK(r.strata[0].zeros.empty());
  CHECK(r.strata[0].gamma == Formula::atom(Affine::var(1, 0), Rel::GE));
  REQUIRE(r.strata[0].fibers.size() == 1);
  CHECK(r.strata[0].fibers[0].ac == std::vector<vfrag::AcCond>{vfrag::AcCond::any()});

  const auto& w = doc.get<WeightDecl>("W");
  REQUIRE(w.entries.size() == 2);
  CHECK(w.entries[0].index == 1);
  CHECK(w.entries[0].form == Affine::var(1, 0));
  CHECK(w.entries[1].index == 0);
  CHECK(w.entries[1].form == Affine(1));

  auto region = build_region(r);
  auto z = vfrag::zeta(region, build_weight(w));
  CHECK(z.canonical().str() == "(q-1)/(1 - q^-1*T1)");
}

TEST_CASE("print then parse reproduces the document") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    TextGen tg(seed);
    std::string text = tg.document();
    CAPTURE(text);
    SpecDocument doc = parse_spec(text);
    std::string printed = print_spec(doc);
    CAPTURE(printed);
    CHECK(parse_spec(printed) == doc);
    CHECK(print_spec(parse_spec(printed)) == printed);
  }
}

TEST_CASE("command results") {
  auto doc = parse_spec(slurp(kData + "/ball.igs") + "\nqset D { x > 0 }\nset P (x, y) { 0 <= x and x <= y }\n"
                        "exponent E (x, y) { q: x + y; T1: x; }\n");
  Flags fl;

  auto e = run("euler", {"D"}, doc, fl);
  CHECK(e.payload == nlohmann::json{{"chi_g", -1}, {"chi_b", 0}, {"class", "X"}});
  CHECK(e.exit_code == kOk);
  CHECK(e.command == "euler D");

  fl.rho = {1};
  auto z = run("zeta", {"O", "W"}, doc, fl);
  CHECK(z.text == "(q-1)/(1 - q^-1*T1)");
  CHECK(z.payload["string"] == "(q-1)/(1 - q^-1*T1)");

  auto classical = parse_spec("param normalization = classical;\n" + slurp(kData + "/ball.igs"));
  CHECK(run("zeta", {"O", "W"}, classical, fl).text == "(1-q^-1)/(1 - q^-1*T1)");
  CHECK(print_spec(classical).find("param normalization = classical;") != std::string::npos);

  // sum over 0 <= x <= y of q^{-(x+y)} T^x = 1/((1 - q^-1)(1 - q^-2 T))
  auto s = run("sum", {"P", "E"}, doc, fl);
  CHECK(s.text == "1/((1 - q^-2*T1)*(1 - q^-1))");

  CHECK_THROWS_AS(run("zeta", {"Nope"}, doc, fl), ResolveError);
  CHECK_THROWS_AS(run("zeta", {"D"}, doc, fl), ResolveError);  // wrong kind
  CHECK_THROWS_AS(run("transmogrify", {}, doc, fl), ResolveError);
  CHECK_THROWS_AS(run("zeta", {}, doc, fl), ResolveError);

  auto f = run("fubini-check", {"O", "W"}, doc, fl);
  CHECK(f.exit_code == kOk);
  CHECK(f.payload["verdict"] == "pass");

  fl.precision = 10;
  auto o = run("oracle-check", {"O", "W"}, doc, fl);
  CHECK(o.exit_code == kOk);
  CHECK(o.payload["verdict"] == "pass");

  auto cov = parse_spec(
      "param kappa = [1];\n"
      "region R (x, y) { strata { gamma { x >= 0 and y >= 0 } } }\n"
      "weight W (x, y) { kappa 1: x; omega: 0; }\n"
      "map M (x, y) { matrix [[1, 1], [0, 1]]; shift [1, 0]; }\n");
  auto c = run("cov-check", {"R", "W", "M"}, cov, fl);
  CHECK(c.exit_code == kOk);
  CHECK(c.payload["before"] == c.payload["after"]);
  CHECK(c.payload["measure_preserving"] == true);
  CHECK_THROWS_AS(parse_spec("class C { term u^2 - 1 on (g) { g > 0 }; }"), ResolveError);

  // engine failures are wrapped with the command
  auto div = parse_spec("set P (x) { x >= 0 }\nexponent E (x) { q: -x; }\n");
  try {
    run("sum", {"P", "E"}, div, fl);
    FAIL("no error");
  } catch (const EngineError& err) {
    CHECK(std::string(err.what()).rfind("sum: divergent", 0) == 0);
  }
}

TEST_CASE("rendering is deterministic and exact") {
  auto doc = parse_spec(slurp(kData + "/ball.igs"));
  Flags fl;
  fl.json = true;
  fl.precision = 8;
  fl.decimal = 6;
  std::string a = run("oracle-check", {"O", "W"}, doc, fl).render(true);
  std::string b = run("oracle-check", {"O", "W"}, doc, fl).render(true);
  CHECK(a == b);
  CHECK(a.find("\"note\": \"exact rational arithmetic\"") != std::string::npos);

  CHECK(to_decimal(Rat(9, 4), 3) == "2.250");
  CHECK(to_decimal(Rat(2, 3), 4) == "0.6667");
  CHECK(to_decimal(Rat(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(Rat(-1, 1000), 2) == "0.00");
  CHECK(to_decimal(Rat(5, 2), 0) == "3");
}
