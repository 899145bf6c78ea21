#include "igusa/core/qlinalg.hpp"

#include <stdexcept>

namespace igusa {

QMat qzero(size_t r, size_t c) { return QMat(r, RatVec(c, Rat(0))); }

QMat qidentity(size_t n) {
  QMat m = qzero(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat qmul(const QMat& a, const QMat& b) {
  if (a.empty()) return {};
  size_t inner = a[0].size();
  if (b.size() != inner) throw std::invalid_argument("qmul: shape mismatch");
  size_t c = b.empty() ? 0 : b[0].size();
  QMat r = qzero(a.size(), c);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < c; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

RatVec qmul(const QMat& a, const RatVec& x) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = qdot(a[i], x);
  return r;
}

Rat qdot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("qdot: length mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RREF rref(const QMat& m, size_t cols) {
  RREF out;
  out.R = m;
  size_t rows = m.size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && out.R[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(out.R[p], out.R[r]);
    Rat inv = 1 / out.R[r][c];
    for (auto& v : out.R[r]) v *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || out.R[i][c] == 0) continue;
      Rat f = out.R[i][c];
      for (size_t j = 0; j < out.R[i].size(); ++j) out.R[i][j] -= f * out.R[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

size_t qrank(const QMat& m, size_t cols) { return rref(m, cols).pivots.size(); }

std::optional<RatVec> qsolve(const QMat& a, const RatVec& b, size_t cols) {
  QMat aug = a;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  RREF e = rref(aug, cols);
  for (size_t i = e.pivots.size(); i < e.R.size(); ++i)
    if (e.R[i][cols] != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.R[i][cols];
  return x;
}

std::optional<QMat> qinverse(const QMat& m) {
  size_t n = m.size();
  QMat aug = m;
  for (size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rat(0));
    aug[i][n + i] = 1;
  }
  RREF e = rref(aug, n);
  if (e.pivots.size() != n) return std::nullopt;
  QMat inv = qzero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = e.R[i][n + j];
  return inv;
}

QMat qnullspace(const QMat& m, size_t cols) {
  RREF e = rref(m, cols);
  std::vector<bool> is_piv(cols, false);
  for (auto p : e.pivots) is_piv[p] = true;
  QMat basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    RatVec v(cols, Rat(0));
    v[f] = 1;
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.R[i][f];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace igusa
