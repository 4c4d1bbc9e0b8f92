// Smith normal form over Z with transform tracking: U*A*V = D, U and V
// unimodular, D diagonal with d_1 | d_2 | ... Used for abelianizations of
// presentations; matrices here are tiny (one row per relator).

#pragma once

#include <cstdlib>
#include <utility>
#include <vector>

namespace knotpoly::detail {

using IntMat = std::vector<std::vector<long long>>;

inline IntMat int_identity(int n) {
  IntMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct SmithResult {
  IntMat U, D, V;  // U (rows x rows), V (cols x cols), U*A*V == D
  int rank = 0;
  std::vector<long long> diag;  // nonzero invariant factors, in order
};

inline SmithResult smith_form(IntMat A) {
  const int m = static_cast<int>(A.size());
  const int n = m == 0 ? 0 : static_cast<int>(A[0].size());
  SmithResult res;
  res.U = int_identity(m);
  res.V = int_identity(n);

  auto swap_rows = [&](int a, int b) {
    std::swap(A[a], A[b]);
    std::swap(res.U[a], res.U[b]);
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < m; ++i) std::swap(A[i][a], A[i][b]);
    for (int i = 0; i < n; ++i) std::swap(res.V[i][a], res.V[i][b]);
  };
  auto add_row = [&](int dst, int src, long long f) {  // row dst += f * row src
    for (int j = 0; j < n; ++j) A[dst][j] += f * A[src][j];
    for (int j = 0; j < m; ++j) res.U[dst][j] += f * res.U[src][j];
  };
  auto add_col = [&](int dst, int src, long long f) {
    for (int i = 0; i < m; ++i) A[i][dst] += f * A[i][src];
    for (int i = 0; i < n; ++i) res.V[i][dst] += f * res.V[i][src];
  };
  auto negate_row = [&](int r) {
    for (int j = 0; j < n; ++j) A[r][j] = -A[r][j];
    for (int j = 0; j < m; ++j) res.U[r][j] = -res.U[r][j];
  };

  int k = 0;
  while (k < m && k < n) {
    // Move a minimal-magnitude nonzero entry of the trailing block to (k, k).
    int pi = -1, pj = -1;
    for (int i = k; i < m; ++i)
      for (int j = k; j < n; ++j)
        if (A[i][j] != 0 &&
            (pi < 0 || std::llabs(A[i][j]) < std::llabs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;  // trailing block is zero
    if (pi != k) swap_rows(pi, k);
    if (pj != k) swap_cols(pj, k);

    bool clean = true;
    for (int i = k + 1; i < m; ++i) {
      if (A[i][k] == 0) continue;
      long long q = A[i][k] / A[k][k];
      add_row(i, k, -q);
      if (A[i][k] != 0) clean = false;  // remainder left; pivot will shrink
    }
    for (int j = k + 1; j < n; ++j) {
      if (A[k][j] == 0) continue;
      long long q = A[k][j] / A[k][k];
      add_col(j, k, -q);
      if (A[k][j] != 0) clean = false;
    }
    if (!clean) continue;  // re-select a smaller pivot

    // Divisibility: pivot must divide every entry of the trailing block.
    bool divides = true;
    for (int i = k + 1; i < m && divides; ++i)
      for (int j = k + 1; j < n && divides; ++j)
        if (A[i][j] % A[k][k] != 0) {
          add_row(k, i, 1);  // pulls the offending row into play
          divides = false;
        }
    if (!divides) continue;

    if (A[k][k] < 0) negate_row(k);
    ++k;
  }

  res.rank = k;
  res.D = IntMat(m, std::vector<long long>(n, 0));
  for (int i = 0; i < k; ++i) {
    res.D[i][i] = A[i][i];
    res.diag.push_back(A[i][i]);
  }
  return res;
}

}  // namespace knotpoly::detail
