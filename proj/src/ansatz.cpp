// Generic solver: enumerate the monomials allowed by the structure theorems
// for finite-dimensional A- and B-modules and take the exact-shape nullspace
// of the residual map.

#include "ansatz.hpp"
#include "qe/poly.hpp"
#include "qe/qesolver.hpp"

#include <cmath>

namespace qe {

namespace {

using P = Poly<Surd>;

Complex horner(const P& p, Complex z) {
  Complex acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_double();
  return acc;
}

struct ExponentSystem {
  // E_ij(l) = l_i l_j - Gamma_ij^k l_k - mu S_ij
  const AffineConnection2& conn;
  Mat2 ms;  // mu * rho_s

  Surd g(int i, int j, int k) const { return conn.gamma(i, j, k); }

  Complex e12(Complex l1, Complex l2) const {
    return l1 * l2 - g(0, 1, 0).to_double() * l1 - g(0, 1, 1).to_double() * l2 - ms[0][1].to_double();
  }

  // Eliminates l_a through E_bb (b != a solved for l_a) when Gamma_bb^a != 0.
  // Returns (squarefree common factor in l_b, l_a as polynomial in l_b).
  std::pair<P, P> eliminate(int a) const {
    const int b = 1 - a;
    const P t({Surd(0), Surd(1)});
    const Surd inv = Surd(1) / g(b, b, a);
    const P la = P({-ms[b][b], -g(b, b, b), Surd(1)}) * P({inv});
    const P eaa = la * la - P({g(a, a, a)}) * la - P({g(a, a, b)}) * t - P({ms[a][a]});
    const P eab = la * t - P({g(a, b, a)}) * la - P({g(a, b, b)}) * t - P({ms[a][b]});
    return {squarefree_part(poly_gcd(eaa, eab)), la};
  }

  std::vector<std::array<Complex, 2>> solve() const {
    std::vector<std::array<Complex, 2>> out;
    for (int a = 1; a >= 0; --a) {
      const int b = 1 - a;
      if (g(b, b, a).is_zero()) continue;
      const auto [common, la] = eliminate(a);
      for (Complex t : numeric_roots(common)) {
        std::array<Complex, 2> l{};
        l[a] = horner(la, t);
        l[b] = t;
        out.push_back(l);
      }
      return out;
    }
    // Gamma_22^1 = Gamma_11^2 = 0: E_11 and E_22 decouple.
    const P p1 = squarefree_part(P({-ms[0][0], -g(0, 0, 0), Surd(1)}));
    const P p2 = squarefree_part(P({-ms[1][1], -g(1, 1, 1), Surd(1)}));
    for (Complex l1 : numeric_roots(p1))
      for (Complex l2 : numeric_roots(p2)) {
        const double scale = std::max({1.0, std::abs(l1) * std::abs(l2), std::abs(l1), std::abs(l2)});
        if (std::abs(e12(l1, l2)) <= 1e-9 * scale) out.push_back({l1, l2});
      }
    return out;
  }
};

Mat2 scaled_rho_s(const AffineConnection2& conn, const Rational& mu) {
  Mat2 s = ricci(conn).rho_s;
  for (auto& row : s)
    for (auto& x : row) x = x * Surd(mu);
  return s;
}

std::vector<AnsatzFunction> nullspace_basis(const AffineConnection2& conn, const Rational& mu,
                                            const std::vector<AnsatzFunction>& cands) {
  std::vector<Term> keys;
  std::vector<std::array<AnsatzFunction, 3>> res;
  for (const auto& c : cands) {
    const SymMat q = qe_residual(conn, mu, c);
    res.push_back({q[0][0], q[0][1], q[1][1]});
    for (const auto& f : res.back())
      for (const auto& t : f.terms())
        if (std::none_of(keys.begin(), keys.end(), [&](const Term& k) { return same_monomial(k, t); }))
          keys.push_back(t);
  }
  Matrix<Complex> m(3 * keys.size(), std::vector<Complex>(cands.size(), 0.0));
  for (std::size_t c = 0; c < cands.size(); ++c)
    for (int comp = 0; comp < 3; ++comp)
      for (const auto& t : res[c][comp].terms())
        for (std::size_t k = 0; k < keys.size(); ++k)
          if (same_monomial(keys[k], t)) {
            m[3 * k + comp][c] += t.coeff;
            break;
          }
  std::vector<AnsatzFunction> sols;
  for (const auto& v : numeric_nullspace(m, cands.size(), 1e-9)) {
    AnsatzFunction f(conn.context());
    for (std::size_t c = 0; c < cands.size(); ++c)
      if (v[c] != 0.0) f += cands[c] * v[c];
    sols.push_back(f.pruned(1e-13 * f.max_abs_coeff()));
  }
  return rank_basis(sols).basis;
}

}  // namespace

std::vector<std::array<Complex, 2>> type_a_exponents(const AffineConnection2& conn, const Rational& mu) {
  return ExponentSystem{conn, scaled_rho_s(conn, mu)}.solve();
}

bool has_nonconstant_exponential_kernel(const AffineConnection2& conn) {
  // Nonzero l with l_i l_j = Gamma_ij^k l_k, decided exactly.
  const ExponentSystem sys{conn, Mat2{}};
  for (int a = 1; a >= 0; --a) {
    if (sys.g(1 - a, 1 - a, a).is_zero()) continue;
    // l = 0 is always a root; a second distinct root gives l != 0.
    return sys.eliminate(a).first.degree() >= 2;
  }
  const Surd l1s[2] = {Surd(0), conn.gamma(0, 0, 0)};
  const Surd l2s[2] = {Surd(0), conn.gamma(1, 1, 1)};
  for (const auto& l1 : l1s)
    for (const auto& l2 : l2s) {
      if (l1.is_zero() && l2.is_zero()) continue;
      if ((l1 * l2 - conn.gamma(0, 1, 0) * l1 - conn.gamma(0, 1, 1) * l2).is_zero()) return true;
    }
  return false;
}

std::vector<Complex> type_b_powers(const AffineConnection2& conn, const Rational& mu) {
  const Mat2 ms = scaled_rho_s(conn, mu);
  const P p11({-ms[0][0], -(Surd(1) + conn.c[0]), Surd(1)});
  const P p12({-ms[0][1], -conn.c[2]});
  const P p22({-ms[1][1], -conn.c[4]});
  return numeric_roots(squarefree_part(poly_gcd(p11, poly_gcd(p12, p22))));
}

std::vector<AnsatzFunction> ansatz_basis(const AffineConnection2& conn, const Rational& mu) {
  const Context ctx = conn.context();
  std::vector<AnsatzFunction> cands;
  if (conn.kind == Kind::A) {
    for (const auto& l : type_a_exponents(conn, mu))
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b) {
          Term t;
          t.exp1 = l[0];
          t.exp2 = l[1];
          t.pow1 = a;
          t.deg2 = b;
          cands.emplace_back(ctx, std::vector<Term>{t});
        }
  } else {
    for (Complex alpha : type_b_powers(conn, mu))
      for (int k = 0; k <= 2; ++k)
        for (int j = 0; j <= 2; ++j)
          for (int i = 0; i <= 2; ++i) {
            Term t;
            t.pow1 = alpha + static_cast<double>(k - j);
            t.logdeg = i;
            t.deg2 = j;
            cands.emplace_back(ctx, std::vector<Term>{t});
          }
    // Roots differing by integers produce repeated monomials.
    std::vector<AnsatzFunction> uniq;
    for (const auto& f : cands)
      if (std::none_of(uniq.begin(), uniq.end(),
                       [&](const AnsatzFunction& g) { return same_monomial(g.terms()[0], f.terms()[0]); }))
        uniq.push_back(f);
    cands = std::move(uniq);
  }
  return nullspace_basis(conn, mu, cands);
}

}  // namespace qe
