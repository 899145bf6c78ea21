#include "igusa/semilinear/piecewise.hpp"

#include <stdexcept>

namespace igusa::semilinear {

RatVec QPiece::apply(const RatVec& x) const {
  RatVec y = qmul(matrix, x);
  for (size_t j = 0; j < y.size(); ++j) y[j] += offset[j];
  return y;
}

Affine QPiece::component(size_t j) const {
  Affine a;
  a.coef = matrix.at(j);
  a.constant = offset.at(j);
  return a;
}

QPiecewiseMap QPiecewiseMap::affine(const SemilinearSet& domain, const QMat& m, const RatVec& v) {
  QPiecewiseMap f;
  f.in = domain.arity();
  f.out = m.size();
  if (v.size() != f.out) throw std::invalid_argument("QPiecewiseMap::affine: offset size");
  for (const auto& row : m)
    if (row.size() != f.in) throw std::invalid_argument("QPiecewiseMap::affine: matrix width");
  for (const auto& c : domain.cells()) f.pieces.push_back(QPiece{c, m, v});
  return f;
}

QPiecewiseMap QPiecewiseMap::identity(const SemilinearSet& domain) {
  return affine(domain, qidentity(domain.arity()), RatVec(domain.arity(), Rat(0)));
}

QPiecewiseMap QPiecewiseMap::constant(const SemilinearSet& domain, const RatVec& value) {
  return affine(domain, qzero(value.size(), domain.arity()), value);
}

std::optional<RatVec> QPiecewiseMap::apply(const RatVec& x) const {
  for (const auto& p : pieces)
    if (p.domain.contains(x)) return p.apply(x);
  return std::nullopt;
}

SemilinearSet QPiecewiseMap::domain() const {
  std::vector<QCell> cs;
  for (const auto& p : pieces) cs.push_back(p.domain);
  return SemilinearSet::from_cells(in, cs);
}

QPiecewiseMap product_map(const QPiecewiseMap& f, const QPiecewiseMap& g) {
  QPiecewiseMap h;
  h.in = f.in + g.in;
  h.out = f.out + g.out;
  for (const auto& a : f.pieces)
    for (const auto& b : g.pieces) {
      QMat m = qzero(h.out, h.in);
      for (size_t i = 0; i < f.out; ++i)
        for (size_t j = 0; j < f.in; ++j) m[i][j] = a.matrix[i][j];
      for (size_t i = 0; i < g.out; ++i)
        for (size_t j = 0; j < g.in; ++j) m[f.out + i][f.in + j] = b.matrix[i][j];
      RatVec off = a.offset;
      off.insert(off.end(), b.offset.begin(), b.offset.end());
      h.pieces.push_back(QPiece{a.domain.product(b.domain), m, off});
    }
  return h;
}

}  // namespace igusa::semilinear
