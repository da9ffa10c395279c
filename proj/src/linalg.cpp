#include "qe/linalg.hpp"
#include "qe/poly.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qe {

std::vector<std::size_t> numeric_row_reduce(Matrix<Complex>& m, std::size_t ncols, double rel_tol) {
  double scale = 0.0;
  for (const auto& row : m)
    for (std::size_t c = 0; c < ncols; ++c) scale = std::max(scale, std::abs(row[c]));
  const double tol = rel_tol * std::max(scale, 1.0);

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t pick = row;
    double best = 0.0;
    for (std::size_t r = row; r < m.size(); ++r) {
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        pick = r;
      }
    }
    if (best <= tol) {
      for (std::size_t r = row; r < m.size(); ++r) m[r][col] = 0.0;
      continue;
    }
    std::swap(m[row], m[pick]);
    const Complex inv = 1.0 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row) continue;
      const Complex factor = m[r][col];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Matrix<Complex> numeric_nullspace(Matrix<Complex> m, std::size_t ncols, double rel_tol) {
  const auto pivots = numeric_row_reduce(m, ncols, rel_tol);
  Matrix<Complex> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Complex> v(ncols, 0.0);
    v[free] = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Complex> numeric_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

  auto eval = [&](Complex z, Complex& dp) {
    Complex p = 0.0;
    dp = 0.0;
    for (int i = n; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    return p;
  };
  for (auto& z : roots) {
    for (int it = 0; it < 8; ++it) {
      Complex dp;
      const Complex p = eval(z, dp);
      if (dp == 0.0) break;
      const Complex step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
    }
    // Snap parts that are pure rounding noise.
    if (std::abs(z.imag()) <= 1e-13 * std::max(1.0, std::abs(z.real()))) z = {z.real(), 0.0};
    if (std::abs(z.real()) <= 1e-13 * std::max(1.0, std::abs(z.imag()))) z = {0.0, z.imag()};
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace qe
