#pragma once

#include "qe/exact.hpp"
#include "qe/funcalg.hpp"

#include <array>
#include <string>

namespace qe {

enum class Kind { A, B };

/// Position of Gamma_ij^k (i, j, k in {0, 1}) in the six-entry storage
/// (11^1, 11^2, 12^1, 12^2, 22^1, 22^2).
constexpr int cidx(int i, int j, int k) { return 2 * (i + j) + k; }

using Mat2 = std::array<std::array<Surd, 2>, 2>;

/// Type A: constant Christoffel symbols. Type B: Gamma_ij^k = C_ij^k / x1 on x1 > 0.
struct AffineConnection2 {
  Kind kind = Kind::A;
  std::array<Surd, 6> c{};

  const Surd& gamma(int i, int j, int k) const { return c[cidx(i, j, k)]; }
  Surd& gamma(int i, int j, int k) { return c[cidx(i, j, k)]; }

  static AffineConnection2 make(Kind kind, const std::array<Rational, 6>& coeffs);
  bool is_rational() const;
  std::array<Rational, 6> rational_coeffs() const;  // throws when irrational
  Context context() const { return kind == Kind::A ? Context::TypeA : Context::TypeB; }
  std::string str() const;

  friend bool operator==(const AffineConnection2& a, const AffineConnection2& b) {
    return a.kind == b.kind && a.c == b.c;
  }
};

/// Ricci data through its constant coefficient matrix: rho itself for Type A,
/// (x1)^2 rho for Type B.
struct RicciData {
  Mat2 rho{};
  Mat2 rho_s{};
  Mat2 rho_a{};
  int rank = 0;
  int rank_s = 0;

  bool flat() const { return rank == 0; }
  bool symmetric() const { return rho_a[0][1].is_zero(); }
};

RicciData ricci(const AffineConnection2& conn);
int rank(const Mat2& m);
std::array<std::array<AnsatzFunction, 2>, 2> as_functions(const Mat2& m, Kind kind);

/// Constant part of (nabla rho)(d_i, d_j; d_k) indexed [i][j][k]; scaled by
/// (x1)^3 for Type B.
using Tensor3 = std::array<std::array<std::array<Surd, 2>, 2>, 2>;
Tensor3 covariant_ricci(const AffineConnection2& conn);
bool totally_symmetric(const Tensor3& t);

/// The two scalar equations that remain once rho is symmetric
/// (C_22^2 = -C_12^1) for a Type B connection. Both vanish exactly when
/// nabla rho is totally symmetric.
std::array<Surd, 2> projective_obstructions(const AffineConnection2& conn);

struct ProjectiveFlatness {
  bool flat = false;
  std::string family;  // "A-family", "Thm1.13(1)", "Thm1.13(2) v=..."
};
ProjectiveFlatness strongly_projectively_flat(const AffineConnection2& conn);

/// x~1 = x1, x~2 = scale * (shear * x1 + x2); epsilon = C~_22^1 (0 when untouched).
struct NormalizationRecord {
  Surd scale{1};
  Rational shear{0};
  int epsilon = 0;

  bool identity() const { return scale == Surd(1) && shear == 0; }
  /// Jacobian d x~ / d x.
  Mat2 jacobian() const;
};

struct Normalized {
  AffineConnection2 conn;
  NormalizationRecord record;
};
Normalized normalize_type_b(const AffineConnection2& conn);

/// Connection in coordinates x~ = J x (constant J). Type B needs J's first row (1, 0).
AffineConnection2 transform_linear(const AffineConnection2& conn, const Mat2& j);
/// Pushes a (0,2) tensor forward: T~_ab = (J^-1)^i_a (J^-1)^j_b T_ij.
Mat2 transform_covariant(const Mat2& t, const Mat2& j);
Mat2 inverse(const Mat2& m);

struct TypeFlags {
  bool flat = false;
  bool is_also_type_a = false;
  bool is_also_type_c = false;
};
TypeFlags type_flags(const AffineConnection2& conn);

}  // namespace qe
