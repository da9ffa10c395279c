#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qe {

using Complex = std::complex<double>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Row-reduces `m` in place over an exact field; returns the pivot columns.
template <class T>
std::vector<std::size_t> exact_row_reduce(Matrix<T>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t pick = row;
    while (pick < m.size() && m[pick][col] == T(0)) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[row], m[pick]);
    const T inv = T(1) / m[row][col];
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == T(0)) continue;
      const T factor = m[r][col];
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] = m[r][c] - factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t exact_rank(Matrix<T> m, std::size_t ncols) {
  return exact_row_reduce(m, ncols).size();
}

/// Basis of {v : m v = 0}, one vector per free column (that entry set to 1).
template <class T>
Matrix<T> exact_nullspace(Matrix<T> m, std::size_t ncols) {
  const auto pivots = exact_row_reduce(m, ncols);
  Matrix<T> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<T> v(ncols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b[0].size();
  Matrix<T> out(n, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == T(0)) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] = out[i][j] + a[i][l] * b[l][j];
    }
  return out;
}

/// Reduced row echelon form with partial pivoting; entries below
/// `rel_tol * max|m|` count as zero. Returns the pivot columns.
std::vector<std::size_t> numeric_row_reduce(Matrix<Complex>& m, std::size_t ncols, double rel_tol);

/// Numeric nullspace in the same free-column normalization as exact_nullspace.
Matrix<Complex> numeric_nullspace(Matrix<Complex> m, std::size_t ncols, double rel_tol = 1e-10);

}  // namespace qe
