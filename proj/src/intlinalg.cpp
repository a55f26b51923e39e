#include "qhring/intlinalg.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qh {

namespace {

using i128 = __int128;

Int checked(i128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("intlinalg: 64-bit overflow");
  return (Int)x;
}

// x*a + y*b = g = gcd(a,b), g >= 0
Int extGcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    if (a < 0) {
      x = -1;
      y = 0;
      return -a;
    }
    x = 1;
    y = 0;
    return a;
  }
  Int x1, y1;
  Int g = extGcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

int rows(const IMat& m) { return (int)m.size(); }
int cols(const IMat& m) { return m.empty() ? 0 : (int)m[0].size(); }

void swapCols(IMat& m, int i, int j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

// col_j += k * col_i
void addColMultiple(IMat& m, int j, int i, Int k) {
  if (k == 0) return;
  for (auto& row : m) row[j] = checked(i128(row[j]) + i128(k) * row[i]);
}

// Replace columns (i, j) by the unimodular combination
//   col_i' = x*col_i + y*col_j,  col_j' = u*col_i + w*col_j
void twoColOp(IMat& m, int i, int j, Int x, Int y, Int u, Int w) {
  for (auto& row : m) {
    i128 a = row[i], b = row[j];
    row[i] = checked(x * a + y * b);
    row[j] = checked(u * a + w * b);
  }
}

}  // namespace

IMat identityMatrix(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat matMul(const IMat& a, const IMat& b) {
  int n = rows(a), k = cols(a), p = cols(b);
  if (k != rows(b)) throw std::invalid_argument("matMul: shape mismatch");
  IMat c(n, IVec(p, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < p; ++j)
        c[i][j] = checked(i128(c[i][j]) + i128(a[i][t]) * b[t][j]);
    }
  return c;
}

IVec vecMatMul(const IVec& v, const IMat& m) {
  if ((int)v.size() != rows(m)) throw std::invalid_argument("vecMatMul: shape mismatch");
  IVec r(cols(m), 0);
  for (int i = 0; i < (int)v.size(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < cols(m); ++j)
      r[j] = checked(i128(r[j]) + i128(v[i]) * m[i][j]);
  }
  return r;
}

IMat transposed(const IMat& a) {
  IMat t(cols(a), IVec(rows(a)));
  for (int i = 0; i < rows(a); ++i)
    for (int j = 0; j < cols(a); ++j) t[j][i] = a[i][j];
  return t;
}

ColumnHnf columnHermite(IMat a) {
  int m = rows(a), n = cols(a);
  IMat v = identityMatrix(n);
  int piv = 0;
  for (int r = 0; r < m && piv < n; ++r) {
    int j0 = -1;
    for (int j = piv; j < n; ++j)
      if (a[r][j] != 0) {
        j0 = j;
        break;
      }
    if (j0 < 0) continue;
    if (j0 != piv) {
      swapCols(a, piv, j0);
      swapCols(v, piv, j0);
    }
    for (int j = piv + 1; j < n; ++j) {
      if (a[r][j] == 0) continue;
      Int x, y;
      Int g = extGcd(a[r][piv], a[r][j], x, y);
      Int p = a[r][piv] / g, q = a[r][j] / g;
      // (x y; -q p) has determinant x*p + y*q = 1
      twoColOp(a, piv, j, x, y, -q, p);
      twoColOp(v, piv, j, x, y, -q, p);
    }
    if (a[r][piv] < 0) {
      for (int i = 0; i < m; ++i) a[i][piv] = -a[i][piv];
      for (int i = 0; i < n; ++i) v[i][piv] = -v[i][piv];
    }
    // reduce earlier columns against this pivot
    for (int j = 0; j < piv; ++j) {
      Int q = a[r][j] >= 0 ? a[r][j] / a[r][piv] : -((-a[r][j] + a[r][piv] - 1) / a[r][piv]);
      addColMultiple(a, j, piv, -q);
      addColMultiple(v, j, piv, -q);
    }
    ++piv;
  }
  ColumnHnf out;
  out.rank = piv;
  out.v = std::move(v);
  out.h = std::move(a);
  return out;
}

IMat rowHermite(IMat b) {
  int m = rows(b);
  if (m == 0) return b;
  int n = cols(b);
  int piv = 0;
  for (int c = 0; c < n && piv < m; ++c) {
    int i0 = -1;
    for (int i = piv; i < m; ++i)
      if (b[i][c] != 0) {
        i0 = i;
        break;
      }
    if (i0 < 0) continue;
    std::swap(b[piv], b[i0]);
    for (int i = piv + 1; i < m; ++i) {
      while (b[i][c] != 0) {
        Int q = b[piv][c] / b[i][c];
        for (int j = 0; j < n; ++j) b[piv][j] = checked(i128(b[piv][j]) - i128(q) * b[i][j]);
        std::swap(b[piv], b[i]);
      }
    }
    if (b[piv][c] < 0)
      for (int j = 0; j < n; ++j) b[piv][j] = -b[piv][j];
    for (int i = 0; i < piv; ++i) {
      Int p = b[piv][c];
      Int q = b[i][c] >= 0 ? b[i][c] / p : -((-b[i][c] + p - 1) / p);
      if (q != 0)
        for (int j = 0; j < n; ++j) b[i][j] = checked(i128(b[i][j]) - i128(q) * b[piv][j]);
    }
    ++piv;
  }
  b.resize(piv);
  return b;
}

IMat kernelBasis(const IMat& a) {
  int n = cols(a);
  if (rows(a) == 0 || n == 0) return identityMatrix(n);
  ColumnHnf ch = columnHermite(a);
  IMat basis;
  for (int j = ch.rank; j < n; ++j) {
    IVec row(n);
    for (int i = 0; i < n; ++i) row[i] = ch.v[i][j];
    basis.push_back(std::move(row));
  }
  return rowHermite(std::move(basis));
}

IMat unimodularInverse(const IMat& t) {
  int n = rows(t);
  if (n != cols(t)) throw std::invalid_argument("unimodularInverse: not square");
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = Rational(t[i][j]);
    aug[i][n + i] = Rational(1);
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!aug[i][c].isZero()) {
        p = i;
        break;
      }
    if (p < 0) throw std::invalid_argument("unimodularInverse: singular");
    std::swap(aug[c], aug[p]);
    Rational inv = Rational(1) / aug[c][c];
    for (int j = 0; j < 2 * n; ++j) aug[c][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || aug[i][c].isZero()) continue;
      Rational f = aug[i][c];
      for (int j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  IMat inv(n, IVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!aug[i][n + j].isInteger())
        throw std::invalid_argument("unimodularInverse: input not unimodular");
      inv[i][j] = aug[i][n + j].num();
    }
  return inv;
}

bool latticeContains(const IMat& hnfRows, IVec v) {
  int n = (int)v.size();
  for (const IVec& row : hnfRows) {
    int c = 0;
    while (c < n && row[c] == 0) ++c;
    if (c == n) continue;
    if (v[c] % row[c] != 0) return false;
    Int q = v[c] / row[c];
    if (q != 0)
      for (int j = 0; j < n; ++j) v[j] = checked(i128(v[j]) - i128(q) * row[j]);
  }
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace qh
