#pragma once

#include <utility>
#include <vector>

#include "igusa/grothring/resclass.hpp"
#include "igusa/semilinear/piecewise.hpp"

namespace igusa::grothring {

struct FiberPart {
  semilinear::SemilinearSet part;
  ResClass fiber;
};

// Partition base so the fiber class is constant on each part; parts are disjoint and equal
// classes are merged. Throws if pieces disagree on an overlap or fail to cover the base.
std::vector<FiberPart> refine_to_twistoids(const semilinear::SemilinearSet& base,
                                           const std::vector<std::pair<semilinear::QCell, ResClass>>& pieces);

}  // namespace igusa::grothring
