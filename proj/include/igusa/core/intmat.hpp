#pragma once

#include <optional>
#include <vector>

#include "igusa/core/number.hpp"

namespace igusa {

using IntMat = std::vector<IntVec>;  // row major

IntMat zero_mat(size_t r, size_t c);
IntMat identity_mat(size_t n);
IntMat transpose(const IntMat& m, size_t cols_if_empty = 0);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& x);
Int dot(const IntVec& a, const IntVec& b);

struct Echelon {
  IntMat H;  // row echelon form, positive pivots
  IntMat U;  // unimodular with U * M = H
  std::vector<size_t> pivots;  // pivot column of each nonzero row
  size_t rank() const { return pivots.size(); }
};

Echelon row_echelon(const IntMat& m, size_t cols);

// Lattice basis (rows) of { x in Z^cols : M x = 0 }.
IntMat kernel_basis(const IntMat& m, size_t cols);

// Some integer x with A x = b, if one exists.
std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b, size_t cols);

Int determinant(const IntMat& m);

// Inverse of a matrix with |det| = 1.
IntMat unimodular_inverse(const IntMat& m);

// Lattice { x : C x == 0 mod m_i row-wise } given in upper-triangular form: basis rows b_i with
// b_i[j] = 0 for j < i and b_i[i] = d_i > 0.
struct CongruenceLattice {
  IntMat basis;
  IntVec diag() const;
};
CongruenceLattice congruence_lattice(const IntMat& c, const IntVec& moduli, size_t cols);

// Hermite normal form (upper triangular, positive diagonal) for a full-rank lattice given by rows.
IntMat lattice_hnf(const IntMat& gens, size_t cols);

// Given k columns (as rows of `cols_t`, each of length n) whose lattice is saturated, returns
// an n x n unimodular matrix whose first k columns are those vectors; nullopt if not saturated.
std::optional<IntMat> complete_unimodular(const IntMat& cols_t, size_t n);

// Smith-normal-form invariant: product of elementary divisors for a full-rank square matrix is |det|.
// For a k x n matrix of rank k, gcd of maximal minors.
Int maximal_minor_gcd(const IntMat& m, size_t cols);

}  // namespace igusa
