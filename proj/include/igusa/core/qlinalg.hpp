#pragma once

#include <optional>
#include <vector>

#include "igusa/core/number.hpp"

namespace igusa {

using QMat = std::vector<RatVec>;

QMat qzero(size_t r, size_t c);
QMat qidentity(size_t n);
QMat qmul(const QMat& a, const QMat& b);
RatVec qmul(const QMat& a, const RatVec& x);
Rat qdot(const RatVec& a, const RatVec& b);

struct RREF {
  QMat R;
  std::vector<size_t> pivots;
};
RREF rref(const QMat& m, size_t cols);
size_t qrank(const QMat& m, size_t cols);
std::optional<RatVec> qsolve(const QMat& a, const RatVec& b, size_t cols);
std::optional<QMat> qinverse(const QMat& m);
QMat qnullspace(const QMat& m, size_t cols);

}  // namespace igusa
