// Integrability oracle. The quasi-Einstein equation prolongs to a closed
// first-order system on the 1-jet u = (f, df). For Type A, d_i u = A_i u with
// constant A_i. For Type B we use the frame u = (f, x1 f_1, x1 f_2) and the
// operators D_i = x1 d_i, which satisfy [D_1, D_2] = D_2; then D_i u = B_i u
// with constant B_i. In both cases the solution space has the dimension of the
// largest subspace that is killed by the curvature of the system and is
// invariant under the system matrices.

#include "qe/linalg.hpp"
#include "qe/qesolver.hpp"

#include <stdexcept>

namespace qe {

namespace {

using M = Matrix<Surd>;

M zeros(std::size_t n) { return M(n, std::vector<Surd>(n, Surd(0))); }

M sub(const M& a, const M& b) {
  M out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = a[i][j] - b[i][j];
  return out;
}

// Connection matrix (M_i)^l_k = C_ik^l stored as [l][k].
M connection_matrix(const AffineConnection2& conn, int i) {
  M out = zeros(2);
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) out[l][k] = conn.gamma(i, k, l);
  return out;
}

// Symmetric Ricci, recomputed here from the curvature operator
// R(d_1, d_2) = [M_1, M_2] (minus M_2 for Type B, times (x1)^-2).
M own_symmetric_ricci(const AffineConnection2& conn) {
  const M m1 = connection_matrix(conn, 0);
  const M m2 = connection_matrix(conn, 1);
  M r12 = sub(mat_mul(m1, m2), mat_mul(m2, m1));
  if (conn.kind == Kind::B) r12 = sub(r12, m2);
  // rho_1k = -(R12)^2_k, rho_2k = (R12)^1_k
  M rho = zeros(2);
  for (int k = 0; k < 2; ++k) {
    rho[0][k] = -r12[1][k];
    rho[1][k] = r12[0][k];
  }
  M s = zeros(2);
  const Surd half(Rational(1, 2));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s[a][b] = half * (rho[a][b] + rho[b][a]);
  return s;
}

}  // namespace

int jet_dimension_oracle(const AffineConnection2& conn, const Rational& mu) {
  const M s = own_symmetric_ricci(conn);
  const bool b = conn.kind == Kind::B;
  std::array<M, 2> a = {zeros(3), zeros(3)};
  for (int i = 0; i < 2; ++i) {
    a[i][0][1 + i] = Surd(1);
    for (int j = 0; j < 2; ++j) {
      a[i][1 + j][0] = Surd(mu) * s[i][j];
      for (int k = 0; k < 2; ++k) {
        Surd v = conn.gamma(i, j, k);
        if (b && i == 0 && j == k) v += Surd(1);
        a[i][1 + j][1 + k] = v;
      }
    }
  }
  M f = sub(mat_mul(a[1], a[0]), mat_mul(a[0], a[1]));
  if (b) f = sub(f, a[1]);

  M rows = f;
  std::size_t rk = exact_rank(rows, 3);
  for (int iter = 0;; ++iter) {
    if (iter > 3) throw std::logic_error("jet oracle failed to stabilize within 3 prolongations");
    M next = rows;
    for (const auto& ai : a) {
      const M ra = mat_mul(rows, ai);
      next.insert(next.end(), ra.begin(), ra.end());
    }
    const std::size_t nrk = exact_rank(next, 3);
    // keep a compact row basis for the next round
    exact_row_reduce(next, 3);
    next.resize(nrk);
    rows = std::move(next);
    if (nrk == rk) break;
    rk = nrk;
  }
  return 3 - static_cast<int>(rk);
}

}  // namespace qe
