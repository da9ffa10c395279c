#pragma once

#include "qe/funcalg.hpp"
#include "qe/report.hpp"
#include "qe/surface.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qe {

using Point4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using Mat4F = std::array<std::array<AnsatzFunction, 4>, 4>;
/// Index order [a][b][c][d].
using Tensor4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

struct DeformationTensor {
  AnsatzFunction phi11;
  AnsatzFunction phi12;
  AnsatzFunction phi22;

  static DeformationTensor zero(Context ctx);
  const AnsatzFunction& at(int i, int j) const;
};

/// g = -2 y_k Gamma_ij^k dx^i dx^j + Phi_ij dx^i dx^j + 2 dx^i o dy_i in
/// coordinates (x1, x2, y1, y2).
struct ExtensionMetric {
  AffineConnection2 conn;
  DeformationTensor phi;
  Mat4F g;
  Mat4F ginv;  // [[0, I], [I, -B]]
};

ExtensionMetric build_extension(const AffineConnection2& conn, const DeformationTensor& phi);

Mat4 evaluate(const Mat4F& m, const Point4& p);
Mat4F lift(const std::array<std::array<AnsatzFunction, 2>, 2>& m);

struct CurvaturePack4 {
  Point4 point{};
  Mat4 g{};
  Mat4 ginv{};
  Tensor4 riemann{};  // R_abcd = g_ae R^e_bcd, R^a_bcd = d_c G^a_db - d_d G^a_cb + ...
  Mat4 ricci{};       // rho_bd = R^c_bcd
  double scalar = 0.0;
  Tensor4 weyl{};
  double weyl_plus = 0.0;   // Frobenius norms of (W +- *W)/2, orientation dx1^dx2^dy1^dy2
  double weyl_minus = 0.0;
  double weyl_trace = 0.0;  // max |g^ac W_abcd|
};

/// Curvature of a metric given with its inverse, computed once in the
/// four-variable algebra and evaluated per point.
class CurvatureField {
 public:
  CurvatureField(Mat4F g, Mat4F ginv);

  const Mat4F& metric() const { return g_; }
  const Mat4F& inverse() const { return ginv_; }
  /// Gamma^a_bc stored [a][b][c].
  const AnsatzFunction& christoffel(int a, int b, int c) const { return gamma_[a][b][c]; }
  /// R^a_bcd.
  const AnsatzFunction& riemann(int a, int b, int c, int d) const { return riem_[((a * 4 + b) * 4 + c) * 4 + d]; }
  const Mat4F& ricci() const { return ricci_; }

  CurvaturePack4 at(const Point4& p) const;
  /// Hessian d_a d_b F - Gamma^c_ab d_c F, exact.
  Mat4F hessian(const AnsatzFunction& f) const;

 private:
  Mat4F g_;
  Mat4F ginv_;
  std::array<Mat4F, 4> gamma_;
  std::vector<AnsatzFunction> riem_;
  Mat4F ricci_;
};

/// Serial reference and OpenMP version of the per-point evaluation.
std::vector<CurvaturePack4> evaluate_serial(const CurvatureField& field, const std::vector<Point4>& pts);
std::vector<CurvaturePack4> evaluate_parallel(const CurvatureField& field, const std::vector<Point4>& pts);

/// n points uniform in [1,2] x [-1,1]^3 from mt19937_64(seed).
std::vector<Point4> probe_points4(std::uint64_t seed, int n = 10);

/// Value, gradient and Hessian of a scalar at a point.
struct Jet4 {
  double value = 0.0;
  std::array<double, 4> d{};
  Mat4 dd{};
};
Jet4 jet(const AnsatzFunction& f4, const Point4& p);
/// F = -(2/mu) log f, by the chain rule from the jet of f.
Jet4 log_jet(const Jet4& f, double mu);

/// Which half of the Weyl tensor vanishes for these metrics under the fixed
/// orientation; asserted across the test suite.
inline constexpr const char* kVanishingWeylHalf = "W-";

VerificationReport verify_theorem_1_1(const AffineConnection2& conn, const DeformationTensor& phi, const Rational& mu,
                                      const AnsatzFunction& f, const std::vector<Point4>& pts);

/// sup over the points of |rho - (tau/4) g| for g^ = e^{-F} g with F = pi* f^,
/// f^ = 2 log f (the mu = -1 solution f must be a single term).
double conformal_einstein_residual(const ExtensionMetric& metric, const AnsatzFunction& f, const Rational& mu,
                                   const std::vector<Point4>& pts);

}  // namespace qe
