#include "qe/warp.hpp"

#include <cmath>
#include <stdexcept>

namespace qe {

namespace {

double frob(const Mat4& m) {
  double s = 0.0;
  for (const auto& r : m)
    for (double v : r) s += v * v;
  return std::sqrt(s);
}

// phi = e^{-F/r} from the jet of F
Jet4 phi_from_F(const Jet4& F, int r) {
  Jet4 p;
  p.value = std::exp(-F.value / r);
  for (int a = 0; a < 4; ++a) p.d[a] = -p.value * F.d[a] / r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) p.dd[a][b] = p.value * (F.d[a] * F.d[b] / (r * r) - F.dd[a][b] / r);
  return p;
}

Mat4 covariant_hessian(const CurvatureField& field, const Jet4& j, const Point4& p) {
  Mat4 h = j.dd;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const auto& g = field.christoffel(c, a, b);
        if (!g.is_zero()) h[a][b] -= eval(g, p).real() * j.d[c];
      }
  return h;
}

}  // namespace

WarpSpec warp_spec_from_solution(const AffineConnection2& conn, const DeformationTensor& phi, const Rational& mu,
                                 const AnsatzFunction& f, int r) {
  if (r < 1) throw std::invalid_argument("fiber dimension must be a positive integer");
  if (mu * r != 2) throw std::invalid_argument("mu_N = mu/2 must equal 1/r");
  WarpSpec spec;
  spec.base = build_extension(conn, phi);
  spec.r = r;
  const AnsatzFunction f4 = f.with_context(Context::Fourd);
  const double m = to_double(mu);
  spec.F = [f4, m](const Point4& p) { return log_jet(jet(f4, p), m); };
  spec.phi = f4;
  return spec;
}

WarpSpec perturbed(const WarpSpec& spec, double eps) {
  WarpSpec out = spec;
  out.phi.reset();
  out.F = [F = spec.F, eps](const Point4& p) {
    Jet4 j = F(p);
    j.value += eps * p[1];
    j.d[1] += eps;
    return j;
  };
  return out;
}

WarpReport warped_einstein_report(const WarpSpec& spec, const std::vector<Point4>& pts) {
  const CurvatureField field(spec.base.g, spec.base.ginv);
  const int r = spec.r;
  const double lam = spec.lambda;
  WarpReport out;
  for (const auto& p : pts) {
    const Jet4 F = spec.F(p);
    const Jet4 phi = spec.phi ? jet(*spec.phi, p) : phi_from_F(F, r);
    const Mat4 rho = evaluate(field.ricci(), p);
    const Mat4 g = evaluate(spec.base.g, p);
    const Mat4 gi = evaluate(spec.base.ginv, p);
    const Mat4 hphi = covariant_hessian(field, phi, p);
    const Mat4 hF = covariant_hessian(field, F, p);
    Mat4 base{};
    Mat4 ident{};
    double lap = 0.0;
    double grad2 = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        base[a][b] = rho[a][b] - r / phi.value * hphi[a][b] - lam * g[a][b];
        const double fform = hF[a][b] + rho[a][b] - F.d[a] * F.d[b] / r - lam * g[a][b];
        ident[a][b] = fform - base[a][b];
        lap += gi[a][b] * hphi[a][b];
        grad2 += gi[a][b] * phi.d[a] * phi.d[b];
      }
    out.base_residual_max = std::max(out.base_residual_max, frob(base));
    out.identity_residual_max = std::max(out.identity_residual_max, frob(ident));
    out.mu_E_samples.push_back(phi.value * lap + (r - 1) * grad2 + lam * phi.value * phi.value);
  }
  const double n = static_cast<double>(out.mu_E_samples.size());
  for (double v : out.mu_E_samples) out.mu_E += v / n;
  if (out.mu_E_samples.size() > 1) {
    double ss = 0.0;
    for (double v : out.mu_E_samples) ss += (v - out.mu_E) * (v - out.mu_E);
    out.constancy_std = std::sqrt(ss / (n - 1.0));
  }
  out.pass = !pts.empty() && out.base_residual_max <= kWarpBaseTol && out.identity_residual_max <= kWarpBaseTol &&
             out.constancy_std <= kWarpStdTol;
  return out;
}

nlohmann::json to_json(const WarpReport& r) {
  return {{"mu_E", r.mu_E},
          {"mu_E_samples", r.mu_E_samples},
          {"base_residual_max", r.base_residual_max},
          {"identity_residual_max", r.identity_residual_max},
          {"constancy_std", r.constancy_std},
          {"pass", r.pass}};
}

}  // namespace qe
