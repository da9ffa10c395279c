#pragma once

#include "qe/funcalg.hpp"
#include "qe/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qe {

using SymMat = std::array<std::array<AnsatzFunction, 2>, 2>;
using CMat2 = std::array<std::array<Complex, 2>, 2>;

/// Q f = (d_i d_j f - Gamma_ij^k d_k f) - mu f rho_s, entrywise in f's algebra.
SymMat qe_residual(const AffineConnection2& conn, const Rational& mu, const AnsatzFunction& f);
SymMat hessian(const AffineConnection2& conn, const AnsatzFunction& f);
double max_coeff(const SymMat& m);
/// max |Q f| over the points.
double max_residual_on(const SymMat& m, const std::vector<std::array<double, 2>>& pts);

/// 5x5 grid over [1,2] x [-1,1].
std::vector<std::array<double, 2>> probe_grid();

struct EigenspaceDescription {
  Rational mu;
  int dim = 0;
  std::vector<AnsatzFunction> basis;  // in the coordinates of `frame`
  std::string case_label;
  AffineConnection2 input;
  AffineConnection2 frame;            // normalized connection for Type B
  NormalizationRecord normalization;  // identity for Type A
};

EigenspaceDescription eigenspace(const AffineConnection2& conn, const Rational& mu);

/// Basis rewritten in the input coordinates.
std::vector<AnsatzFunction> to_input_coordinates(const EigenspaceDescription& desc);

/// Basis of E_C(mu) from the exponent/power ansatz alone, in `conn`'s own
/// coordinates; no classification input. Used where no closed form is printed.
std::vector<AnsatzFunction> ansatz_basis(const AffineConnection2& conn, const Rational& mu);

/// Dimension of the solution space from the prolonged system on (f, df):
/// the largest subspace killed by the integrability obstruction and stable
/// under the connection matrices. Exact, independent of the classifier.
int jet_dimension_oracle(const AffineConnection2& conn, const Rational& mu);

/// Real and imaginary parts, reduced to a basis of the same dimension.
std::vector<AnsatzFunction> realize_real_basis(const EigenspaceDescription& desc);

/// f^ = -(2/mu) log f and the residual H f^ + 2 rho_s - (mu/2) df^ (x) df^.
class NonlinearTransform {
 public:
  NonlinearTransform(AffineConnection2 conn, Rational mu, AnsatzFunction f);

  /// Set when f is a single positive monomial, so log f stays in the algebra.
  const std::optional<AnsatzFunction>& fhat() const { return fhat_; }
  std::optional<SymMat> exact_residual() const;

  double value(const std::array<double, 2>& p) const;
  std::array<double, 2> gradient(const std::array<double, 2>& p) const;
  CMat2 hessian_of_fhat(const std::array<double, 2>& p) const;
  CMat2 residual_at(const std::array<double, 2>& p) const;

 private:
  double f_at(const std::array<double, 2>& p) const;

  AffineConnection2 conn_;
  Rational mu_;
  AnsatzFunction f_;
  std::array<AnsatzFunction, 2> df_;
  SymMat ddf_;
  std::optional<AnsatzFunction> fhat_;
};

/// log of a single positive monomial, if it exists in the algebra.
std::optional<AnsatzFunction> log_of_monomial(const AnsatzFunction& f);

/// d/dx1, d/dx2 (Type A) or d/dx2 and x1 d/dx1 + x2 d/dx2 (Type B) map the span into itself.
bool killing_stability_check(const AffineConnection2& conn, const Rational& mu, const EigenspaceDescription& desc);

}  // namespace qe
