#include "igusa/grothring/serialize.hpp"

namespace igusa::grothring {

using semilinear::QPiecewiseMap;

nlohmann::json to_json(const QPiecewiseMap& f) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : f.pieces) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& row : p.matrix) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& v : row) r.push_back(to_str(v));
      m.push_back(r);
    }
    nlohmann::json off = nlohmann::json::array();
    for (const auto& v : p.offset) off.push_back(to_str(v));
    pieces.push_back({{"domain", p.domain.str()}, {"matrix", m}, {"offset", off}});
  }
  return {{"in", f.in}, {"out", f.out}, {"pieces", pieces}};
}

nlohmann::json to_json(const ResClass& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, p] : x.components()) out.push_back({{"grade", k}, {"res", p.str()}, {"count", p.point_count().str()}});
  return out;
}

nlohmann::json to_json(const RVClass& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, ts] : x.grades()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : ts) {
      nlohmann::json g = {{"set", t.y.I.str()}, {"map", to_json(t.y.f)}};
      if (t.y.vol) g["volume_form"] = {{"omega", to_json(t.y.vol->omega)}, {"unit_twist", t.y.vol->unit_twist}};
      terms.push_back({{"res", t.x.str()}, {"gamma", g}});
    }
    out.push_back({{"grade", k}, {"terms", terms}});
  }
  return out;
}

nlohmann::json to_json(const Retracted& r) {
  nlohmann::json j = {{"euler", r.which == Euler::Eg ? "Eg" : "Eb"},
                      {"mode", r.mode == RetractMode::Plain ? "plain" : (r.mode == RetractMode::Mu ? "mu" : "mu_gamma")},
                      {"value", r.str()}};
  if (r.mode == RetractMode::Plain) {
    j["numerator"] = r.numerator.str();
    j["denominator"] = r.which == Euler::Eg ? "A" : "v";
    j["power"] = r.power;
  } else {
    j["graded"] = to_json(r.graded);
  }
  return j;
}

}  // namespace igusa::grothring
