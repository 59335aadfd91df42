#include <algorithm>

#include "fskit/errors.hpp"
#include "fskit/presentation.hpp"

namespace fskit {

namespace {

Matrix identity_matrix(size_t n) {
  Matrix I(n, std::vector<BigInt>(n, 0));
  for (size_t k = 0; k < n; ++k) I[k][k] = 1;
  return I;
}

void swap_rows(Matrix &A, size_t i, size_t j) { std::swap(A[i], A[j]); }

void swap_cols(Matrix &A, size_t i, size_t j) {
  for (auto &row : A) std::swap(row[i], row[j]);
}

// row_i += q * row_j
void add_row(Matrix &A, size_t i, size_t j, const BigInt &q) {
  for (size_t k = 0; k < A[i].size(); ++k) A[i][k] += q * A[j][k];
}

void add_col(Matrix &A, size_t i, size_t j, const BigInt &q) {
  for (auto &row : A) row[i] += q * row[j];
}

} // namespace

Matrix multiply(const Matrix &A, const Matrix &B) {
  if (A.empty() || B.empty()) return {};
  size_t m = A.size(), n = B[0].size(), l = B.size();
  if (A[0].size() != l) throw ShapeMismatch("matrix product shape");
  Matrix C(m, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k < l; ++k)
      if (A[i][k] != 0)
        for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

BigInt determinant(const Matrix &A) {
  // Bareiss fraction-free elimination
  size_t n = A.size();
  if (n == 0) return 1;
  Matrix M = A;
  BigInt sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && M[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

SmithForm smith_normal_form(const Matrix &A) {
  size_t m = A.size(), n = m ? A[0].size() : 0;
  SmithForm s{identity_matrix(m), A, identity_matrix(n)};
  Matrix &D = s.D;
  for (size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // bring the smallest non-zero entry of the trailing block to (t,t)
      size_t bi = m, bj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (bi == m || abs(D[i][j]) < abs(D[bi][bj]))) bi = i, bj = j;
      if (bi == m) return s;
      swap_rows(D, t, bi);
      swap_rows(s.U, t, bi);
      swap_cols(D, t, bj);
      swap_cols(s.V, t, bj);

      bool dirty = false;
      for (size_t i = t + 1; i < m; ++i) {
        BigInt q = D[i][t] / D[t][t];
        if (q != 0) {
          add_row(D, i, t, -q);
          add_row(s.U, i, t, -q);
        }
        if (D[i][t] != 0) dirty = true;
      }
      for (size_t j = t + 1; j < n; ++j) {
        BigInt q = D[t][j] / D[t][t];
        if (q != 0) {
          add_col(D, j, t, -q);
          add_col(s.V, j, t, -q);
        }
        if (D[t][j] != 0) dirty = true;
      }
      if (dirty) continue;

      // enforce divisibility of the trailing block by the pivot
      for (size_t i = t + 1; i < m && !dirty; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(D, t, i, 1);
            add_row(s.U, t, i, 1);
            dirty = true;
            break;
          }
      if (!dirty) break;
    }
    if (D[t][t] < 0) {
      for (auto &x : D[t]) x = -x;
      for (auto &x : s.U[t]) x = -x;
    }
  }
  return s;
}

} // namespace fskit
