#pragma once

#include <json.hpp>

#include "igusa/grothring/retract.hpp"

namespace igusa::grothring {

nlohmann::json to_json(const ResClass& x);
nlohmann::json to_json(const RVClass& x);
nlohmann::json to_json(const Retracted& r);
nlohmann::json to_json(const semilinear::QPiecewiseMap& f);

}  // namespace igusa::grothring
