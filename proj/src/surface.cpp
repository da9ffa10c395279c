#include "qe/surface.hpp"
#include "qe/linalg.hpp"

#include <stdexcept>

namespace qe {

namespace {

const char* kLabels[6] = {"111", "112", "121", "122", "221", "222"};

Surd delta(int a, int b) { return a == b ? Surd(1) : Surd(0); }

}  // namespace

AffineConnection2 AffineConnection2::make(Kind kind, const std::array<Rational, 6>& coeffs) {
  AffineConnection2 out;
  out.kind = kind;
  for (int i = 0; i < 6; ++i) out.c[i] = Surd(coeffs[i]);
  return out;
}

bool AffineConnection2::is_rational() const {
  for (const auto& x : c)
    if (!x.is_rational()) return false;
  return true;
}

std::array<Rational, 6> AffineConnection2::rational_coeffs() const {
  std::array<Rational, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = c[i].to_rational();
  return out;
}

std::string AffineConnection2::str() const {
  std::string out = kind == Kind::A ? "A{" : "B{";
  bool first = true;
  for (int i = 0; i < 6; ++i) {
    if (c[i].is_zero()) continue;
    if (!first) out += ", ";
    out += std::string(kLabels[i]) + "=" + c[i].str();
    first = false;
  }
  return out + "}";
}

RicciData ricci(const AffineConnection2& conn) {
  RicciData out;
  const bool b = conn.kind == Kind::B;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      Surd acc;
      for (int i = 0; i < 2; ++i) {
        // (x1)^2 d_i Gamma_jk^l = -delta_i1 C_jk^l for Type B
        if (b) acc += -delta(i, 0) * conn.gamma(j, k, i) + delta(j, 0) * conn.gamma(i, k, i);
        for (int m = 0; m < 2; ++m) {
          acc += conn.gamma(i, m, i) * conn.gamma(j, k, m) - conn.gamma(j, m, i) * conn.gamma(i, k, m);
        }
      }
      out.rho[j][k] = acc;
    }
  }
  const Surd half = Surd(Rational(1, 2));
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      out.rho_s[j][k] = half * (out.rho[j][k] + out.rho[k][j]);
      out.rho_a[j][k] = half * (out.rho[j][k] - out.rho[k][j]);
    }
  out.rank = rank(out.rho);
  out.rank_s = rank(out.rho_s);
  return out;
}

int rank(const Mat2& m) {
  Matrix<Surd> rows = {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
  return static_cast<int>(exact_rank(rows, 2));
}

std::array<std::array<AnsatzFunction, 2>, 2> as_functions(const Mat2& m, Kind kind) {
  const Context ctx = kind == Kind::A ? Context::TypeA : Context::TypeB;
  std::array<std::array<AnsatzFunction, 2>, 2> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Term t;
      t.coeff = m[i][j].to_double();
      if (kind == Kind::B) t.pow1 = -2.0;
      out[i][j] = AnsatzFunction(ctx, {t});
    }
  return out;
}

Tensor3 covariant_ricci(const AffineConnection2& conn) {
  const Mat2 s = ricci(conn).rho;
  const bool b = conn.kind == Kind::B;
  Tensor3 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Surd acc = b ? Surd(-2) * delta(k, 0) * s[i][j] : Surd(0);
        for (int m = 0; m < 2; ++m) acc -= conn.gamma(k, i, m) * s[m][j] + conn.gamma(k, j, m) * s[i][m];
        out[i][j][k] = acc;
      }
  return out;
}

bool totally_symmetric(const Tensor3& t) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (t[i][j][k] != t[j][i][k] || t[i][j][k] != t[k][j][i] || t[i][j][k] != t[i][k][j]) return false;
  return true;
}

std::array<Surd, 2> projective_obstructions(const AffineConnection2& conn) {
  const Surd& c111 = conn.c[0];
  const Surd& c112 = conn.c[1];
  const Surd& c121 = conn.c[2];
  const Surd& c122 = conn.c[3];
  const Surd& c221 = conn.c[4];
  return {c111 * c121 + Surd(3) * c112 * c221 - Surd(2) * c121 * c122 + Surd(2) * c121,
          Surd(2) * c111 * c221 - Surd(6) * c121 * c121 - Surd(4) * c122 * c221 - Surd(2) * c221};
}

ProjectiveFlatness strongly_projectively_flat(const AffineConnection2& conn) {
  if (conn.kind == Kind::A) return {true, "A-family"};
  const RicciData r = ricci(conn);
  if (!r.symmetric() || !totally_symmetric(covariant_ricci(conn))) return {false, ""};
  const AffineConnection2 n = normalize_type_b(conn).conn;
  if (n.c[2].is_zero() && n.c[4].is_zero() && n.c[5].is_zero()) return {true, "Thm1.13(1)"};
  if (n.c[1].is_zero() && n.c[2].is_zero() && n.c[5].is_zero() && !n.c[4].is_zero() &&
      n.c[0] == Surd(1) + Surd(2) * n.c[3]) {
    return {true, "Thm1.13(2) v=" + n.c[3].str()};
  }
  return {true, "Thm1.13(unmatched)"};
}

Mat2 NormalizationRecord::jacobian() const {
  return {{{Surd(1), Surd(0)}, {scale * Surd(shear), scale}}};
}

Mat2 inverse(const Mat2& m) {
  const Surd det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det.is_zero()) throw std::domain_error("singular coordinate change");
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

AffineConnection2 transform_linear(const AffineConnection2& conn, const Mat2& j) {
  if (conn.kind == Kind::B && (j[0][0] != Surd(1) || !j[0][1].is_zero())) {
    throw std::invalid_argument("a Type B coordinate change must fix x1");
  }
  const Mat2 inv = inverse(j);  // inv[i][a] = d x^i / d x~^a
  AffineConnection2 out;
  out.kind = conn.kind;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Surd acc;
        for (int i = 0; i < 2; ++i)
          for (int jj = 0; jj < 2; ++jj)
            for (int k = 0; k < 2; ++k) {
              if (inv[i][a].is_zero() || inv[jj][b].is_zero() || j[c][k].is_zero()) continue;
              acc += inv[i][a] * inv[jj][b] * conn.gamma(i, jj, k) * j[c][k];
            }
        out.gamma(a, b, c) = acc;
      }
  return out;
}

Mat2 transform_covariant(const Mat2& t, const Mat2& j) {
  const Mat2 inv = inverse(j);
  Mat2 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Surd acc;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) acc += inv[i][a] * inv[k][b] * t[i][k];
      out[a][b] = acc;
    }
  return out;
}

Normalized normalize_type_b(const AffineConnection2& conn) {
  if (conn.kind != Kind::B) throw std::invalid_argument("normalize_type_b needs a Type B connection");
  const Surd& c221 = conn.c[4];
  if (c221.is_zero()) return {conn, {}};
  const Rational v = c221.to_rational();
  NormalizationRecord rec;
  rec.epsilon = v > 0 ? 1 : -1;
  rec.scale = Surd::sqrt(v > 0 ? v : Rational(-v));
  rec.shear = conn.c[2].to_rational() / v;
  AffineConnection2 out = transform_linear(conn, rec.jacobian());
  if (out.c[4] != Surd(rec.epsilon) || !out.c[2].is_zero()) {
    throw std::logic_error("normalization did not reach C_22^1 = +-1, C_12^1 = 0");
  }
  return {out, rec};
}

TypeFlags type_flags(const AffineConnection2& conn) {
  TypeFlags f;
  f.flat = ricci(conn).flat();
  if (conn.kind == Kind::B) {
    f.is_also_type_a = conn.c[2].is_zero() && conn.c[4].is_zero() && conn.c[5].is_zero();
    const AffineConnection2 n = normalize_type_b(conn).conn;
    f.is_also_type_c = n.c[0] == Surd(-1) && n.c[1].is_zero() && n.c[2].is_zero() && n.c[3] == Surd(-1) &&
                       !n.c[4].is_zero() && n.c[5].is_zero();
  }
  return f;
}

}  // namespace qe
