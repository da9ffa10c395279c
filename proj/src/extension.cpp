#include "qe/extension.hpp"
#include "qe/qesolver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qe {

namespace {

constexpr Context k4 = Context::Fourd;
constexpr double kPrune = 1e-13;

AnsatzFunction zero4() { return AnsatzFunction(k4); }

AnsatzFunction mul(const AnsatzFunction& a, const AnsatzFunction& b) {
  if (a.is_zero() || b.is_zero()) return zero4();
  return internal::multiply(a, b);
}

AnsatzFunction clean(const AnsatzFunction& f) { return f.pruned(kPrune); }

// Gamma_ij^k of the base connection times y_k, as a function on T*M.
AnsatzFunction christoffel_times_y(const AffineConnection2& conn, int i, int j, int k) {
  const Surd& c = conn.gamma(i, j, k);
  if (c.is_zero()) return zero4();
  Term t;
  t.coeff = c.to_double();
  if (conn.kind == Kind::B) t.pow1 = -1.0;
  (k == 0 ? t.fiberdeg1 : t.fiberdeg2) = 1;
  return AnsatzFunction(k4, {t});
}

double frob(const Mat4& m) {
  double s = 0.0;
  for (const auto& r : m)
    for (double v : r) s += v * v;
  return std::sqrt(s);
}

double frob(const Tensor4& t) {
  double s = 0.0;
  for (const auto& a : t)
    for (const auto& b : a)
      for (const auto& c : b)
        for (double v : c) s += v * v;
  return std::sqrt(s);
}

int perm_sign(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

double det4(Mat4 m) {
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

double max_coeff(const Mat4F& m) {
  double out = 0.0;
  for (const auto& r : m)
    for (const auto& f : r) out = std::max(out, f.max_abs_coeff());
  return out;
}

}  // namespace

DeformationTensor DeformationTensor::zero(Context ctx) {
  return {AnsatzFunction(ctx), AnsatzFunction(ctx), AnsatzFunction(ctx)};
}

const AnsatzFunction& DeformationTensor::at(int i, int j) const {
  if (i == 0 && j == 0) return phi11;
  if (i == 1 && j == 1) return phi22;
  return phi12;
}

ExtensionMetric build_extension(const AffineConnection2& conn, const DeformationTensor& phi) {
  const Context ctx = conn.context();
  for (const auto* p : {&phi.phi11, &phi.phi12, &phi.phi22}) {
    if (!p->is_zero() && p->context() != ctx) throw std::invalid_argument("deformation tensor context does not match the connection");
  }
  ExtensionMetric m{conn, phi, {}, {}};
  for (auto& r : m.g) r.fill(zero4());
  for (auto& r : m.ginv) r.fill(zero4());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      AnsatzFunction b = phi.at(i, j).with_context(k4);
      for (int k = 0; k < 2; ++k) b -= christoffel_times_y(conn, i, j, k) * Complex(2.0);
      m.g[i][j] = b;
      m.ginv[2 + i][2 + j] = -b;
    }
  for (int i = 0; i < 2; ++i) {
    const AnsatzFunction one = AnsatzFunction::constant(k4, 1.0);
    m.g[i][2 + i] = m.g[2 + i][i] = one;
    m.ginv[i][2 + i] = m.ginv[2 + i][i] = one;
  }
  return m;
}

Mat4 evaluate(const Mat4F& m, const Point4& p) {
  Mat4 out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out[a][b] = m[a][b].is_zero() ? 0.0 : eval(m[a][b], p).real();
  return out;
}

Mat4F lift(const std::array<std::array<AnsatzFunction, 2>, 2>& m) {
  Mat4F out;
  for (auto& r : out) r.fill(zero4());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = m[i][j].with_context(k4);
  return out;
}

CurvatureField::CurvatureField(Mat4F g, Mat4F ginv) : g_(std::move(g)), ginv_(std::move(ginv)) {
  // dg[c][a][b] = d_c g_ab
  std::array<Mat4F, 4> dg;
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) dg[c][a][b] = derive(g_[a][b], c);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        AnsatzFunction acc = zero4();
        for (int d = 0; d < 4; ++d) {
          if (ginv_[a][d].is_zero()) continue;
          acc += mul(ginv_[a][d], dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        }
        gamma_[a][b][c] = gamma_[a][c][b] = clean(acc * 0.5);
      }

  riem_.assign(256, zero4());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) {
          AnsatzFunction r = derive(gamma_[a][d][b], c) - derive(gamma_[a][c][b], d);
          for (int e = 0; e < 4; ++e) r += mul(gamma_[a][c][e], gamma_[e][d][b]) - mul(gamma_[a][d][e], gamma_[e][c][b]);
          r = clean(r);
          riem_[((a * 4 + b) * 4 + c) * 4 + d] = r;
          riem_[((a * 4 + b) * 4 + d) * 4 + c] = -r;
        }
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      AnsatzFunction acc = zero4();
      for (int c = 0; c < 4; ++c) acc += riemann(c, b, c, d);
      ricci_[b][d] = clean(acc);
    }
}

Mat4F CurvatureField::hessian(const AnsatzFunction& f) const {
  const AnsatzFunction f4 = f.with_context(k4);
  std::array<AnsatzFunction, 4> df;
  for (int c = 0; c < 4; ++c) df[c] = derive(f4, c);
  Mat4F out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      AnsatzFunction h = derive(df[a], b);
      for (int c = 0; c < 4; ++c) h -= mul(gamma_[c][a][b], df[c]);
      out[a][b] = clean(h);
    }
  return out;
}

CurvaturePack4 CurvatureField::at(const Point4& p) const {
  CurvaturePack4 out;
  out.point = p;
  out.g = evaluate(g_, p);
  out.ginv = evaluate(ginv_, p);
  const Mat4& g = out.g;
  const Mat4& gi = out.ginv;

  Tensor4 up{};  // R^a_bcd
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const auto& r = riemann(a, b, c, d);
          up[a][b][c][d] = r.is_zero() ? 0.0 : eval(r, p).real();
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int e = 0; e < 4; ++e) s += g[a][e] * up[e][b][c][d];
          out.riemann[a][b][c][d] = s;
        }
  out.ricci = evaluate(ricci_, p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.scalar += gi[a][b] * out.ricci[a][b];

  const Mat4& rho = out.ricci;
  const double tau = out.scalar;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const double kn = g[a][c] * rho[b][d] - g[a][d] * rho[b][c] + g[b][d] * rho[a][c] - g[b][c] * rho[a][d];
          const double gg = g[a][c] * g[b][d] - g[a][d] * g[b][c];
          out.weyl[a][b][c][d] = out.riemann[a][b][c][d] - 0.5 * kn + tau / 6.0 * gg;
        }
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) s += gi[a][c] * out.weyl[a][b][c][d];
      out.weyl_trace = std::max(out.weyl_trace, std::abs(s));
    }

  // (*W)_abcd = 1/2 W_ab^ef eps_efcd, eps_0123 = sqrt|det g|
  const double vol = std::sqrt(std::abs(det4(g)));
  Tensor4 raised{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int e = 0; e < 4; ++e)
        for (int f = 0; f < 4; ++f) {
          double s = 0.0;
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) s += gi[e][c] * gi[f][d] * out.weyl[a][b][c][d];
          raised[a][b][e][f] = s;
        }
  Tensor4 plus{};
  Tensor4 minus{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double star = 0.0;
          for (int e = 0; e < 4; ++e)
            for (int f = 0; f < 4; ++f)
              if (const int s = perm_sign(e, f, c, d)) star += 0.5 * raised[a][b][e][f] * s * vol;
          plus[a][b][c][d] = 0.5 * (out.weyl[a][b][c][d] + star);
          minus[a][b][c][d] = 0.5 * (out.weyl[a][b][c][d] - star);
        }
  out.weyl_plus = frob(plus);
  out.weyl_minus = frob(minus);
  return out;
}

std::vector<CurvaturePack4> evaluate_serial(const CurvatureField& field, const std::vector<Point4>& pts) {
  std::vector<CurvaturePack4> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(field.at(p));
  return out;
}

std::vector<CurvaturePack4> evaluate_parallel(const CurvatureField& field, const std::vector<Point4>& pts) {
  std::vector<CurvaturePack4> out(pts.size());
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = field.at(pts[i]);
  return out;
}

std::vector<Point4> probe_points4(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x1(1.0, 2.0);
  std::uniform_real_distribution<double> rest(-1.0, 1.0);
  std::vector<Point4> out;
  for (int i = 0; i < n; ++i) {
    Point4 p;
    p[0] = x1(rng);
    for (int k = 1; k < 4; ++k) p[k] = rest(rng);
    out.push_back(p);
  }
  return out;
}

Jet4 jet(const AnsatzFunction& f4, const Point4& p) {
  Jet4 j;
  j.value = eval(f4, p).real();
  for (int a = 0; a < 4; ++a) {
    const AnsatzFunction da = derive(f4, a);
    j.d[a] = eval(da, p).real();
    for (int b = a; b < 4; ++b) j.dd[a][b] = j.dd[b][a] = eval(derive(da, b), p).real();
  }
  return j;
}

Jet4 log_jet(const Jet4& f, double mu) {
  if (f.value <= 0.0) throw std::domain_error("f is not positive at a probe point");
  const double s = -2.0 / mu;
  Jet4 out;
  out.value = s * std::log(f.value);
  for (int a = 0; a < 4; ++a) out.d[a] = s * f.d[a] / f.value;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.dd[a][b] = s * (f.dd[a][b] / f.value - f.d[a] * f.d[b] / (f.value * f.value));
  return out;
}

VerificationReport verify_theorem_1_1(const AffineConnection2& conn, const DeformationTensor& phi, const Rational& mu,
                                      const AnsatzFunction& f, const std::vector<Point4>& pts) {
  VerificationReport rep;
  rep.metadata["connection"] = conn.str();
  rep.metadata["mu"] = format_rational(mu);
  rep.metadata["mu_N"] = format_rational(mu / 2);
  rep.metadata["lambda"] = "0";
  rep.metadata["points"] = pts.size();
  rep.metadata["weyl_half_checked"] = kVanishingWeylHalf;

  const double qres = max_coeff(qe_residual(conn, mu, f));
  if (qres > 1e-9 * std::max(1.0, f.max_abs_coeff())) {
    rep.fail("precondition: f in E(mu)", "qe_residual max coefficient " + std::to_string(qres));
    return rep;
  }
  const AnsatzFunction f4 = f.with_context(k4);
  for (const auto& p : pts) {
    const Complex v = eval(f4, p);
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v))) {
      rep.fail("precondition: f real", "f has an imaginary part at a probe point");
      return rep;
    }
    if (mu != 0 && v.real() <= 0.0) {
      rep.fail("precondition: f positive", "f <= 0 at a probe point");
      return rep;
    }
  }

  const ExtensionMetric metric = build_extension(conn, phi);
  const CurvatureField field(metric.g, metric.ginv);
  const double m = to_double(mu);

  // (i) quasi-Einstein equation on T*M with mu_N = mu/2 and lambda = 0
  if (mu == 0) {
    rep.add("pullback hessian vanishes", max_coeff(field.hessian(f)), 1e-12, "exact");
  } else if (auto lg = log_of_monomial(f)) {
    const AnsatzFunction F = (*lg * Complex(-2.0 / m)).with_context(k4);
    Mat4F e = field.hessian(F);
    std::array<AnsatzFunction, 4> dF;
    for (int a = 0; a < 4; ++a) dF[a] = derive(F, a);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) e[a][b] = clean(e[a][b] + field.ricci()[a][b] - mul(dF[a], dF[b]) * (m / 2.0));
    rep.add("quasi-Einstein on T*M", max_coeff(e), 1e-12, "exact");
    double iso = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) iso = std::max(iso, mul(mul(metric.ginv[a][b], dF[a]), dF[b]).max_abs_coeff());
    rep.add("dF isotropic", iso, 1e-12, "exact");
  } else {
    double worst = 0.0;
    double iso = 0.0;
    for (const auto& p : pts) {
      const Jet4 F = log_jet(jet(f4, p), m);
      const Mat4 rho = evaluate(field.ricci(), p);
      const Mat4 gi = evaluate(metric.ginv, p);
      Mat4 e{};
      double n2 = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double h = F.dd[a][b];
          for (int c = 0; c < 4; ++c) {
            const auto& gm = field.christoffel(c, a, b);
            if (!gm.is_zero()) h -= eval(gm, p).real() * F.d[c];
          }
          e[a][b] = h + rho[a][b] - m / 2.0 * F.d[a] * F.d[b];
          n2 += gi[a][b] * F.d[a] * F.d[b];
        }
      worst = std::max(worst, frob(e));
      iso = std::max(iso, std::abs(n2));
    }
    rep.add("quasi-Einstein on T*M", worst, 1e-9, "numeric");
    rep.add("dF isotropic", iso, 1e-12, "numeric");
  }

  // (iii) one Weyl half vanishes
  const auto packs = evaluate_parallel(field, pts);
  double wm = 0.0;
  double wp = 0.0;
  for (const auto& k : packs) {
    wm = std::max(wm, k.weyl_minus);
    wp = std::max(wp, k.weyl_plus);
  }
  rep.add(std::string("Weyl half ") + kVanishingWeylHalf + " vanishes", wm, 1e-8, "numeric");
  rep.metadata["weyl_other_half_max"] = wp;

  // (iv) rho_g = 2 pi* rho_s
  const Mat4F rs = lift(as_functions(ricci(conn).rho_s, conn.kind));
  double inter = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) inter = std::max(inter, clean(field.ricci()[a][b] - rs[a][b] * 2.0).max_abs_coeff());
  rep.add("rho_g = 2 pi* rho_s", inter, 1e-12, "exact");

  // Walker: span{d/dy1, d/dy2} is null and parallel
  double walker = 0.0;
  for (int i = 2; i < 4; ++i) {
    for (int j = 2; j < 4; ++j) walker = std::max(walker, metric.g[i][j].max_abs_coeff());
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 2; ++c) walker = std::max(walker, field.christoffel(c, a, i).max_abs_coeff());
  }
  rep.add("Walker distribution", walker, 1e-12, "exact");
  return rep;
}

double conformal_einstein_residual(const ExtensionMetric& metric, const AnsatzFunction& f, const Rational& mu,
                                   const std::vector<Point4>& pts) {
  if (mu != -1) throw std::invalid_argument("the conformal Einstein criterion needs a mu = -1 solution");
  if (f.terms().size() != 1) throw std::invalid_argument("conformal factor must be a single term");
  // e^{-F} = f^{-2} for F = 2 log f
  const AnsatzFunction f4 = f.with_context(k4);
  const AnsatzFunction w = internal::reciprocal(f4);
  const AnsatzFunction down = mul(w, w);
  const AnsatzFunction up = mul(f4, f4);
  Mat4F g;
  Mat4F gi;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      g[a][b] = mul(down, metric.g[a][b]);
      gi[a][b] = mul(up, metric.ginv[a][b]);
    }
  const CurvatureField field(g, gi);
  double worst = 0.0;
  for (const auto& p : pts) {
    const Mat4 rho = evaluate(field.ricci(), p);
    const Mat4 gp = evaluate(g, p);
    const Mat4 gip = evaluate(gi, p);
    double tau = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) tau += gip[a][b] * rho[a][b];
    Mat4 tf{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) tf[a][b] = rho[a][b] - tau / 4.0 * gp[a][b];
    worst = std::max(worst, frob(tf));
  }
  return worst;
}

}  // namespace qe
