#include "igusa/grothring/twistoid.hpp"

#include <stdexcept>

namespace igusa::grothring {

using semilinear::SemilinearSet;

std::vector<FiberPart> refine_to_twistoids(const SemilinearSet& base,
                                           const std::vector<std::pair<semilinear::QCell, ResClass>>& pieces) {
  size_t n = base.arity();
  std::vector<FiberPart> parts;
  SemilinearSet covered(n);
  for (const auto& [cell, cls] : pieces) {
    if (cell.arity != n) throw std::invalid_argument("refine_to_twistoids: piece arity mismatch");
    SemilinearSet p = SemilinearSet::from_cells(n, {cell}).intersect(base);
    if (p.is_empty()) continue;
    for (const auto& fp : parts) {
      SemilinearSet overlap = fp.part.intersect(p);
      if (!overlap.is_empty() && !(fp.fiber == cls))
        throw std::invalid_argument("refine_to_twistoids: contradictory fibers " + fp.fiber.str() + " and " + cls.str() +
                                    " on " + overlap.str());
    }
    SemilinearSet fresh = p.minus(covered);
    if (fresh.is_empty()) continue;
    covered = covered.unite(fresh);
    bool merged = false;
    for (auto& fp : parts)
      if (fp.fiber == cls) {
        fp.part = fp.part.unite(fresh);
        merged = true;
        break;
      }
    if (!merged) parts.push_back(FiberPart{fresh, cls});
  }
  SemilinearSet missing = base.minus(covered);
  if (!missing.is_empty()) throw std::invalid_argument("refine_to_twistoids: pieces do not cover " + missing.str());
  return parts;
}

}  // namespace igusa::grothring
