#pragma once

#include "qe/extension.hpp"

#include <functional>
#include <optional>

namespace qe {

/// Base (N, g, F) with fiber dimension r and Einstein constant lambda;
/// the warping function is phi = e^{-F/r}.
struct WarpSpec {
  ExtensionMetric base;
  int r = 1;
  double lambda = 0.0;
  std::function<Jet4(const Point4&)> F;
  /// phi itself when it is a term-algebra function (phi = pi* f when mu r = 2).
  std::optional<AnsatzFunction> phi;
};

/// F = pi*(-(2/mu) log f); requires mu_N = mu/2 = 1/r.
WarpSpec warp_spec_from_solution(const AffineConnection2& conn, const DeformationTensor& phi, const Rational& mu,
                                 const AnsatzFunction& f, int r);

/// Same spec with F replaced by F + eps * x2.
WarpSpec perturbed(const WarpSpec& spec, double eps);

struct WarpReport {
  double mu_E = 0.0;  // mean over the points
  std::vector<double> mu_E_samples;
  double base_residual_max = 0.0;      // |rho - (r/phi) H phi - lambda g|
  double identity_residual_max = 0.0;  // F-form versus phi-form of the base condition
  double constancy_std = 0.0;
  bool pass = false;
};

inline constexpr double kWarpBaseTol = 1e-10;
inline constexpr double kWarpStdTol = 1e-6;

WarpReport warped_einstein_report(const WarpSpec& spec, const std::vector<Point4>& pts);

nlohmann::json to_json(const WarpReport& r);

}  // namespace qe
