#pragma once

#include <vector>

#include "qhring/rational.hpp"

namespace qh {

using Int = long long;
using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;  // row-major

IMat identityMatrix(int n);
IMat matMul(const IMat& a, const IMat& b);
IVec vecMatMul(const IVec& v, const IMat& m);  // row vector times matrix
IMat transposed(const IMat& a);

// Column Hermite form with transform: a * v = [h | 0] where h consists of
// the first `rank` columns, is in column echelon with positive pivots and
// entries to the left of each pivot reduced into [0, pivot).
struct ColumnHnf {
  IMat h;
  IMat v;  // unimodular, cols(a) x cols(a)
  int rank;
};
ColumnHnf columnHermite(IMat a);

// Canonical reduced row Hermite form of the lattice spanned by the rows.
// Zero rows are dropped; pivots are positive; entries below a pivot are zero
// and entries above are reduced into [0, pivot).
IMat rowHermite(IMat b);

// Basis for the integer kernel { v : a * v^T = 0 }, as rows in row Hermite
// form. The result is the full (saturated) kernel lattice.
IMat kernelBasis(const IMat& a);

// Exact inverse of a unimodular integer matrix; throws if not unimodular.
IMat unimodularInverse(const IMat& t);

// Membership of v in the lattice spanned by rows of a row-Hermite matrix.
bool latticeContains(const IMat& hnfRows, IVec v);

}  // namespace qh
