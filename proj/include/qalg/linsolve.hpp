#pragma once
// Dense exact linear algebra over Q(i): Gauss-Jordan elimination with full
// consistency reporting and nullspace extraction.

#include <cstddef>
#include <vector>

#include "qalg/rational.hpp"

namespace qalg {

struct LinearSolution {
  bool consistent = true;
  std::vector<GaussRat> x;        // one solution (free variables set to 0)
  size_t rank = 0;
  size_t nullity = 0;
  std::vector<size_t> pivot_cols;
  std::vector<size_t> free_cols;
  std::vector<std::vector<GaussRat>> nullspace;  // basis vectors, one per free col
};

// Solves A x = b exactly.  A is row-major; rows may outnumber columns.
inline LinearSolution solve_linear(std::vector<std::vector<GaussRat>> A,
                                   std::vector<GaussRat> b) {
  const size_t nrows = A.size();
  const size_t ncols = nrows ? A[0].size() : 0;
  LinearSolution out;
  std::vector<size_t> pivot_row_of_col(ncols, SIZE_MAX);
  size_t prow = 0;
  for (size_t col = 0; col < ncols && prow < nrows; ++col) {
    size_t sel = SIZE_MAX;
    for (size_t r = prow; r < nrows; ++r)
      if (!A[r][col].is_zero()) {
        sel = r;
        break;
      }
    if (sel == SIZE_MAX) continue;
    std::swap(A[sel], A[prow]);
    std::swap(b[sel], b[prow]);
    GaussRat inv = A[prow][col].inverse();
    for (size_t c = col; c < ncols; ++c) A[prow][c] *= inv;
    b[prow] *= inv;
    for (size_t r = 0; r < nrows; ++r) {
      if (r == prow || A[r][col].is_zero()) continue;
      GaussRat f = A[r][col];
      for (size_t c = col; c < ncols; ++c) A[r][c] -= f * A[prow][c];
      b[r] -= f * b[prow];
    }
    pivot_row_of_col[col] = prow;
    out.pivot_cols.push_back(col);
    ++prow;
  }
  out.rank = prow;
  for (size_t r = prow; r < nrows; ++r)
    if (!b[r].is_zero()) out.consistent = false;
  for (size_t c = 0; c < ncols; ++c)
    if (pivot_row_of_col[c] == SIZE_MAX) out.free_cols.push_back(c);
  out.nullity = out.free_cols.size();
  out.x.assign(ncols, GaussRat::zero());
  for (size_t c : out.pivot_cols) out.x[c] = b[pivot_row_of_col[c]];
  // Nullspace basis: one vector per free column.
  for (size_t fc : out.free_cols) {
    std::vector<GaussRat> v(ncols, GaussRat::zero());
    v[fc] = GaussRat(1);
    for (size_t c : out.pivot_cols) v[c] = -A[pivot_row_of_col[c]][fc];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace qalg
