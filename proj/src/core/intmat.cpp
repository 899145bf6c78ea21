#include "igusa/core/intmat.hpp"

#include <stdexcept>
#include <utility>

namespace igusa {

IntMat zero_mat(size_t r, size_t c) { return IntMat(r, IntVec(c, Int(0))); }

IntMat identity_mat(size_t n) {
  IntMat m = zero_mat(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat transpose(const IntMat& m, size_t cols_if_empty) {
  size_t r = m.size();
  size_t c = r ? m[0].size() : cols_if_empty;
  IntMat t = zero_mat(c, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.empty()) return {};
  size_t inner = a[0].size();
  if (b.size() != inner) throw std::invalid_argument("mat_mul: shape mismatch");
  size_t c = b.empty() ? 0 : b[0].size();
  IntMat r = zero_mat(a.size(), c);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < c; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
  IntVec r(a.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
  return r;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

void row_combine(IntVec& r1, IntVec& r2, const Int& a, const Int& b, const Int& c, const Int& d) {
  // (r1, r2) <- (a r1 + b r2, c r1 + d r2)
  for (size_t j = 0; j < r1.size(); ++j) {
    Int x = a * r1[j] + b * r2[j];
    Int y = c * r1[j] + d * r2[j];
    r1[j] = std::move(x);
    r2[j] = std::move(y);
  }
}

}  // namespace

Echelon row_echelon(const IntMat& m, size_t cols) {
  Echelon e;
  e.H = m;
  size_t rows = m.size();
  e.U = identity_mat(rows);
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    // gcd-reduce all rows below r into row r
    for (size_t i = r + 1; i < rows; ++i) {
      if (e.H[i][col] == 0) continue;
      Int a = e.H[r][col], b = e.H[i][col];
      Int x, y;
      Int g = ext_gcd(a, b, x, y);
      Int ag = a / g, bg = b / g;
      // new r = x*r + y*i ; new i = -bg*r + ag*i  (det = x*ag + y*bg = 1)
      row_combine(e.H[r], e.H[i], x, y, -bg, ag);
      row_combine(e.U[r], e.U[i], x, y, -bg, ag);
    }
    if (e.H[r][col] == 0) continue;
    if (e.H[r][col] < 0) {
      for (auto& v : e.H[r]) v = -v;
      for (auto& v : e.U[r]) v = -v;
    }
    // reduce rows above
    for (size_t i = 0; i < r; ++i) {
      Int f = floor_div(e.H[i][col], e.H[r][col]);
      if (f == 0) continue;
      for (size_t j = 0; j < cols; ++j) e.H[i][j] -= f * e.H[r][j];
      for (size_t j = 0; j < rows; ++j) e.U[i][j] -= f * e.U[r][j];
    }
    e.pivots.push_back(col);
    ++r;
  }
  return e;
}

IntMat kernel_basis(const IntMat& m, size_t cols) {
  IntMat mt = transpose(m, cols);  // cols x rows
  size_t rows = m.size();
  Echelon e = row_echelon(mt, rows);
  IntMat basis;
  for (size_t i = e.rank(); i < cols; ++i) basis.push_back(e.U[i]);
  return basis;
}

std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b, size_t cols) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_integer: shape mismatch");
  size_t rows = a.size();
  IntMat at = transpose(a, cols);  // cols x rows
  Echelon e = row_echelon(at, rows);
  // want y with sum_i y_i H_i = b
  IntVec y(cols, Int(0));
  IntVec rem = b;
  for (size_t i = 0; i < e.rank(); ++i) {
    size_t p = e.pivots[i];
    if (mod_floor(rem[p], e.H[i][p]) != 0) return std::nullopt;
    y[i] = rem[p] / e.H[i][p];
    for (size_t j = 0; j < rows; ++j) rem[j] -= y[i] * e.H[i][j];
  }
  for (const auto& v : rem)
    if (v != 0) return std::nullopt;
  // x^T = y^T U
  IntVec x(cols, Int(0));
  for (size_t i = 0; i < cols; ++i) {
    if (y[i] == 0) continue;
    for (size_t j = 0; j < cols; ++j) x[j] += y[i] * e.U[i][j];
  }
  return x;
}

Int determinant(const IntMat& m0) {
  size_t n = m0.size();
  if (n == 0) return 1;
  IntMat m = m0;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMat unimodular_inverse(const IntMat& m) {
  size_t n = m.size();
  Echelon e = row_echelon(m, n);
  // U M = H; H upper triangular with positive pivots; unimodular iff H = I
  if (e.rank() != n) throw std::domain_error("unimodular_inverse: singular matrix");
  for (size_t i = 0; i < n; ++i)
    if (e.H[i][i] != 1) throw std::domain_error("unimodular_inverse: |det| != 1");
  return e.U;
}

IntVec CongruenceLattice::diag() const {
  IntVec d;
  for (size_t i = 0; i < basis.size(); ++i) d.push_back(basis[i][i]);
  return d;
}

IntMat lattice_hnf(const IntMat& gens, size_t cols) {
  Echelon e = row_echelon(gens, cols);
  if (e.rank() != cols) throw std::domain_error("lattice_hnf: lattice not full rank");
  IntMat b(e.H.begin(), e.H.begin() + static_cast<long>(cols));
  return b;
}

CongruenceLattice congruence_lattice(const IntMat& c, const IntVec& moduli, size_t cols) {
  size_t k = c.size();
  CongruenceLattice L;
  if (k == 0) {
    L.basis = identity_mat(cols);
    return L;
  }
  // kernel of [C | diag(m)] in Z^{cols + k}, projected onto first cols coordinates
  IntMat ext = zero_mat(k, cols + k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < cols; ++j) ext[i][j] = c[i][j];
    ext[i][cols + i] = moduli[i];
  }
  IntMat ker = kernel_basis(ext, cols + k);
  IntMat proj;
  for (auto& row : ker) proj.emplace_back(row.begin(), row.begin() + static_cast<long>(cols));
  L.basis = lattice_hnf(proj, cols);
  return L;
}

std::optional<IntMat> complete_unimodular(const IntMat& cols_t, size_t n) {
  size_t k = cols_t.size();
  if (k == 0) return identity_mat(n);
  IntMat v = transpose(cols_t, n);  // n x k
  Echelon e = row_echelon(v, k);    // U V = H, H = [H1; 0]
  if (e.rank() != k) return std::nullopt;
  // W = U^{-1} diag(H1, I)
  for (size_t i = 0; i < k; ++i) {
    // saturated iff H1 unimodular, i.e. H1 = I after echelon with positive pivots
    if (e.H[i][i] != 1) return std::nullopt;
  }
  IntMat uinv = unimodular_inverse(e.U);
  IntMat d = identity_mat(n);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) d[i][j] = e.H[i][j];
  return mat_mul(uinv, d);
}

Int maximal_minor_gcd(const IntMat& m, size_t cols) {
  Echelon e = row_echelon(transpose(m, cols), m.size());
  // the column lattice index: product of pivots of the HNF of M^T rows
  Int p = 1;
  for (size_t i = 0; i < e.rank(); ++i) p *= e.H[i][e.pivots[i]];
  return p;
}

}  // namespace igusa
