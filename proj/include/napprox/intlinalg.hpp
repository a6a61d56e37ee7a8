#ifndef NAPPROX_INTLINALG_HPP
#define NAPPROX_INTLINALG_HPP

// Small exact integer linear algebra: column-style Hermite reduction,
// integer kernels, and lattice bases from generator sets.

#include <vector>

#include "napprox/rational.hpp"

namespace napprox {

using ZMatrix = std::vector<std::vector<Int>>;  // row-major

inline ZMatrix zmat(int rows, int cols) {
  return ZMatrix(rows, std::vector<Int>(cols));
}

// Column HNF by unimodular column operations. Returns the transform U
// with A_out = A_in * U. Pivot columns come first; the remaining columns
// of U span the kernel of A_in.
struct ColumnReduction {
  ZMatrix reduced;  // m x n
  ZMatrix transform;  // n x n unimodular
  int rank = 0;
};

inline ColumnReduction column_reduce(ZMatrix a) {
  int m = (int)a.size();
  int n = m ? (int)a[0].size() : 0;
  ZMatrix u = zmat(n, n);
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  auto colop_combine = [&](int i, int j, int k) {
    // combine columns j,k so that row i gets (gcd, 0)
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[i][j].get_mpz_t(),
               a[i][k].get_mpz_t());
    Int aj = a[i][j] / g, ak = a[i][k] / g;
    for (int r = 0; r < m; ++r) {
      Int nj = x * a[r][j] + y * a[r][k];
      Int nk = -ak * a[r][j] + aj * a[r][k];
      a[r][j] = nj;
      a[r][k] = nk;
    }
    for (int r = 0; r < n; ++r) {
      Int nj = x * u[r][j] + y * u[r][k];
      Int nk = -ak * u[r][j] + aj * u[r][k];
      u[r][j] = nj;
      u[r][k] = nk;
    }
  };

  int c = 0;
  for (int i = 0; i < m && c < n; ++i) {
    int piv = -1;
    for (int j = c; j < n; ++j)
      if (a[i][j] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    if (piv != c) {
      for (int r = 0; r < m; ++r) swap(a[r][piv], a[r][c]);
      for (int r = 0; r < n; ++r) swap(u[r][piv], u[r][c]);
    }
    for (int j = c + 1; j < n; ++j)
      if (a[i][j] != 0) colop_combine(i, c, j);
    if (a[i][c] < 0) {
      for (int r = 0; r < m; ++r) a[r][c] = -a[r][c];
      for (int r = 0; r < n; ++r) u[r][c] = -u[r][c];
    }
    ++c;
  }
  // normalize to the unique Hermite form: entries left of a pivot in its row
  // reduced into [0, pivot)
  {
    int col = 0;
    for (int i = 0; i < m && col < c; ++i) {
      if (a[i][col] == 0) continue;
      for (int j = 0; j < col; ++j) {
        Int q = floor_div(a[i][j], a[i][col]);
        if (q == 0) continue;
        for (int r = 0; r < m; ++r) a[r][j] -= q * a[r][col];
        for (int r = 0; r < n; ++r) u[r][j] -= q * u[r][col];
      }
      ++col;
    }
  }
  return {std::move(a), std::move(u), c};
}

// basis (as columns) of {x in Z^n : A x = 0}
inline ZMatrix integer_kernel(const ZMatrix& a) {
  int n = a.empty() ? 0 : (int)a[0].size();
  ColumnReduction cr = column_reduce(a);
  ZMatrix ker = zmat(n, n - cr.rank);
  for (int j = cr.rank; j < n; ++j)
    for (int i = 0; i < n; ++i) ker[i][j - cr.rank] = cr.transform[i][j];
  return ker;
}

// Given generators (columns) of a finite-index sublattice of Z^n, return an
// n x n basis in column Hermite form.
inline ZMatrix lattice_basis_from_generators(const ZMatrix& gens) {
  ColumnReduction cr = column_reduce(gens);
  int n = (int)gens.size();
  if (cr.rank != n) throw Error("generators do not span full rank");
  ZMatrix basis = zmat(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) basis[i][j] = cr.reduced[i][j];
  return basis;
}

inline Int zmat_det(ZMatrix a) {
  int n = (int)a.size();
  // fraction-free Gaussian elimination (Bareiss)
  Int prev = 1;
  Int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace napprox

#endif
