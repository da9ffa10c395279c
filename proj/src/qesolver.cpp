#include "qe/qesolver.hpp"

#include "ansatz.hpp"
#include "qe/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qe {

namespace {

AnsatzFunction christoffel(const AffineConnection2& conn, int i, int j, int k) {
  Term t;
  t.coeff = conn.gamma(i, j, k).to_double();
  if (conn.kind == Kind::B) t.pow1 = -1.0;
  return AnsatzFunction(conn.context(), {t});
}

AnsatzFunction mono(Context ctx, Complex pow1, int deg2 = 0, int logdeg = 0, Complex coeff = 1.0) {
  Term t;
  t.coeff = coeff;
  t.pow1 = pow1;
  t.deg2 = deg2;
  t.logdeg = logdeg;
  return AnsatzFunction(ctx, {t});
}

AnsatzFunction exponential(Context ctx, Complex l1, Complex l2, int deg2 = 0) {
  Term t;
  t.exp1 = l1;
  t.exp2 = l2;
  t.deg2 = deg2;
  return AnsatzFunction(ctx, {t});
}

double d(const Surd& s) { return s.to_double(); }

std::array<std::array<double, 2>, 2> to_double(const Mat2& m) {
  return {{{d(m[0][0]), d(m[0][1])}, {d(m[1][0]), d(m[1][1])}}};
}

// Linear functions l.x with Gamma_ij^k l_k = 0 for all ij.
std::vector<AnsatzFunction> linear_kernel(const AffineConnection2& conn) {
  Matrix<Surd> rows;
  for (int p = 0; p < 3; ++p) rows.push_back({conn.c[2 * p], conn.c[2 * p + 1]});
  std::vector<AnsatzFunction> out;
  for (const auto& l : exact_nullspace(rows, 2)) {
    out.push_back(mono(conn.context(), 1.0, 0, 0, d(l[0])) + mono(conn.context(), 0.0, 1, 0, d(l[1])));
  }
  return out;
}

void fill_from_ansatz(EigenspaceDescription& desc, const Rational& mu) {
  desc.basis = ansatz_basis(desc.frame, mu);
  if (static_cast<int>(desc.basis.size()) != desc.dim) {
    throw std::logic_error("ansatz found " + std::to_string(desc.basis.size()) + " solutions where " +
                           desc.case_label + " gives " + std::to_string(desc.dim) + " for " + desc.frame.str() +
                           ", mu=" + format_rational(mu));
  }
}

void type_a(EigenspaceDescription& desc) {
  const AffineConnection2& conn = desc.frame;
  const Rational& mu = desc.mu;
  const Context ctx = Context::TypeA;
  const RicciData r = ricci(conn);
  if (r.flat()) {
    desc.dim = 3;
    desc.case_label = "Thm1.5(3) flat";
    fill_from_ansatz(desc, mu);
    return;
  }
  if (mu == 0) {
    const auto lin = linear_kernel(conn);
    const bool expo = has_nonconstant_exponential_kernel(conn);
    desc.basis = {AnsatzFunction::constant(ctx, 1.0)};
    desc.basis.insert(desc.basis.end(), lin.begin(), lin.end());
    if (expo) {
      for (const auto& l : type_a_exponents(conn, 0)) {
        if (std::abs(l[0]) + std::abs(l[1]) > 1e-9) {
          desc.basis.push_back(exponential(ctx, l[0], l[1]));
          break;
        }
      }
    }
    desc.dim = static_cast<int>(1 + lin.size() + (expo ? 1 : 0));
    desc.case_label = expo ? "Thm1.10(1a)" : (lin.empty() ? "Thm1.10(1)" : "Thm1.10(1b)");
    if (static_cast<int>(desc.basis.size()) != desc.dim) throw std::logic_error("lost the exponential solution");
    return;
  }
  if (mu == -1) {
    desc.dim = 3;
    desc.case_label = "Thm1.10(2)";
    fill_from_ansatz(desc, mu);
    return;
  }
  if (r.rank_s == 2) {
    desc.dim = 0;
    desc.case_label = "Thm1.10(3) rank 2";
    return;
  }
  // Rank one: move the kernel of rho to d/dx~1, so rho~_11 = rho~_12 = 0.
  const Mat2& rho = r.rho_s;
  std::array<Surd, 2> k = {Surd(1), Surd(0)};
  if (!rho[0][0].is_zero() || !rho[0][1].is_zero()) k = {-rho[0][1], rho[0][0]};
  const std::array<Surd, 2> e = k[0].is_zero() ? std::array<Surd, 2>{Surd(1), Surd(0)}
                                               : std::array<Surd, 2>{Surd(0), Surd(1)};
  const Mat2 p = {{{k[0], e[0]}, {k[1], e[1]}}};  // x = P x~
  const Mat2 jac = inverse(p);
  const AffineConnection2 rot = transform_linear(conn, jac);
  const Mat2 rho_t = transform_covariant(rho, jac);
  if (!rot.c[1].is_zero() || !rot.c[3].is_zero() || !rho_t[0][0].is_zero() || !rho_t[0][1].is_zero()) {
    throw std::logic_error("rank-one rotation did not clear Gamma_11^2, Gamma_12^2");
  }
  const Surd g = rot.c[5];
  const Surd mr = Surd(mu) * rho_t[1][1];
  const Surd disc = g * g + Surd(4) * mr;
  std::vector<AnsatzFunction> tilde;
  if (disc.is_zero()) {
    const double a = d(g) / 2.0;
    tilde = {exponential(ctx, 0.0, a), exponential(ctx, 0.0, a, 1)};
    desc.case_label = "Thm1.10(3) rank 1, double root";
  } else {
    const Complex root = std::sqrt(Complex(d(disc), 0.0));
    tilde = {exponential(ctx, 0.0, (d(g) + root) / 2.0), exponential(ctx, 0.0, (d(g) - root) / 2.0)};
    desc.case_label = "Thm1.10(3) rank 1";
  }
  desc.dim = 2;
  for (const auto& f : tilde) desc.basis.push_back(substitute_linear(f, to_double(jac)));
}

void type_b_zero(EigenspaceDescription& desc, const std::string& prefix) {
  const AffineConnection2& c = desc.frame;
  const Context ctx = Context::TypeB;
  const auto lin = linear_kernel(c);
  desc.basis = {AnsatzFunction::constant(ctx, 1.0)};
  desc.basis.insert(desc.basis.end(), lin.begin(), lin.end());
  std::string label = lin.empty() ? "Thm1.14" : "Thm1.14(1)";
  if (c.c[2].is_zero() && c.c[4].is_zero()) {
    const Surd alpha = c.c[0] + Surd(1);
    if (alpha.is_zero()) {
      desc.basis.push_back(mono(ctx, 0.0, 0, 1));
      label = "Thm1.14(2)";
    } else if (alpha != Surd(1)) {
      // alpha = 1 is x1 itself, already among the linear solutions
      desc.basis.push_back(mono(ctx, d(alpha)));
      if (lin.empty()) label = "Thm1.14(3)";
    }
  }
  desc.dim = static_cast<int>(desc.basis.size());
  desc.case_label = prefix + label;
}

void type_b_critical(EigenspaceDescription& desc) {
  const AffineConnection2& c = desc.frame;
  const Context ctx = Context::TypeB;
  const ProjectiveFlatness spf = strongly_projectively_flat(c);
  if (spf.flat) {
    desc.dim = 3;
    desc.case_label = spf.family;
    fill_from_ansatz(desc, desc.mu);
    return;
  }
  const int eps = desc.normalization.epsilon;
  if (eps == 0 && !c.c[5].is_zero() && c.c[5] == c.c[2]) {
    desc.dim = 1;
    desc.case_label = "Thm1.15(1)";
    desc.basis = {mono(ctx, d(c.c[3]))};
    return;
  }
  const Surd q = c.c[1] * c.c[1];
  if (eps != 0 && !c.c[5].is_zero() && c.c[5] == Surd(2 * eps) * c.c[1] &&
      c.c[0] == Surd(1) + Surd(2) * c.c[3] + Surd(eps) * q) {
    desc.dim = 1;
    desc.case_label = "Thm1.15(2)";
    desc.basis = {mono(ctx, d(c.c[0] - c.c[3] - Surd(1)))};
    return;
  }
  desc.dim = 0;
  desc.case_label = "Thm1.15";
}

void type_b_generic(EigenspaceDescription& desc) {
  const AffineConnection2& c = desc.frame;
  const Context ctx = Context::TypeB;
  const Rational& mu = desc.mu;
  if (c.c[2].is_zero() && c.c[4].is_zero() && c.c[5].is_zero()) {
    // Also Type A, where rho has rank one.
    const int rk = ricci(c).rank_s;
    desc.dim = rk == 1 ? 2 : 0;
    desc.case_label = rk == 1 ? "Thm6.1(2) + Thm1.10(3) rank 1" : "Thm6.1(2) + Thm1.10(3) rank 2";
    if (desc.dim > 0) fill_from_ansatz(desc, mu);
    return;
  }
  const int eps = desc.normalization.epsilon;
  if (eps == 0) {
    desc.dim = 0;
    desc.case_label = "Thm1.17";
    return;
  }
  const Surd& c111 = c.c[0];
  const Surd& c112 = c.c[1];
  const Surd& c122 = c.c[3];
  const Surd& c222 = c.c[5];
  const Surd e(eps);
  const Surd q = c112 * c112;
  const Surd den = c111 - c122 - Surd(1);
  const Surd m(mu);
  bool hit = c222 == Surd(2) * e * c112 && !den.is_zero();
  if (hit) {
    const Surd num = -c111 * c111 + Surd(2) * c111 * c122 + Surd(2) * e * q - c122 * c122 + Surd(2) * c122 + Surd(1);
    hit = m == num / (den * den);
  }
  if (!hit) {
    desc.dim = 0;
    desc.case_label = "Thm1.17";
    return;
  }
  const double alpha = d(m * (Surd(1) + c122 - c111));
  const AnsatzFunction base = mono(ctx, alpha);
  const bool fam1 = c112.is_zero() && c222.is_zero() && c111 == c122 - Surd(1) && m == c122 / Surd(2);
  const Surd eq = e * q;
  // The printed exclusion C_11^2 = +-1/sqrt(2) only bites where 1 + 2 eps q = 0;
  // at eps = +1 the prolonged system still has a 2-dimensional solution space.
  const bool fam2 = !c112.is_zero() && !(Surd(1) + Surd(2) * e * q).is_zero() &&
                    c111 == -(Surd(5) + Surd(16) * eq) / Surd(2) && c122 == -(Surd(3) + Surd(8) * eq) / Surd(2) &&
                    m == -(Surd(3) + Surd(8) * eq) / (Surd(4) + Surd(8) * eq);
  if (fam1) {
    desc.dim = 2;
    desc.case_label = "Thm1.17(1)";
    desc.basis = {base, mono(ctx, alpha, 1)};
  } else if (fam2) {
    desc.dim = 2;
    desc.case_label = "Thm1.17(2)";
    desc.basis = {base, mono(ctx, alpha + 1.0, 0, 0, -2.0 * d(c112)) + mono(ctx, alpha, 1)};
  } else {
    desc.dim = 1;
    desc.case_label = "Thm1.17 dim 1";
    desc.basis = {base};
  }
}

void type_b(EigenspaceDescription& desc) {
  const Normalized n = normalize_type_b(desc.input);
  desc.frame = n.conn;
  desc.normalization = n.record;
  const RicciData r = ricci(desc.frame);
  if (r.flat()) {
    desc.dim = 3;
    desc.case_label = "Thm1.5(3) flat";
    fill_from_ansatz(desc, 0);
    return;
  }
  if (r.rank_s == 0) {
    type_b_zero(desc, "rho_s=0, ");
    return;
  }
  if (desc.mu == 0) {
    type_b_zero(desc, "");
  } else if (desc.mu == -1) {
    type_b_critical(desc);
  } else {
    type_b_generic(desc);
  }
}

}  // namespace

SymMat hessian(const AffineConnection2& conn, const AnsatzFunction& f) {
  if (f.context() != conn.context()) throw std::invalid_argument("function and connection live on different types");
  const std::array<AnsatzFunction, 2> df = {derive(f, 0), derive(f, 1)};
  SymMat out;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      AnsatzFunction h = derive(df[i], j);
      for (int k = 0; k < 2; ++k) {
        if (conn.gamma(i, j, k).is_zero()) continue;
        h -= internal::multiply(christoffel(conn, i, j, k), df[k]);
      }
      out[i][j] = h;
      out[j][i] = h;
    }
  return out;
}

SymMat qe_residual(const AffineConnection2& conn, const Rational& mu, const AnsatzFunction& f) {
  SymMat out = hessian(conn, f);
  if (mu == 0) return out;
  const auto rho = as_functions(ricci(conn).rho_s, conn.kind);
  const Complex m = to_double(mu);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] -= internal::multiply(rho[i][j], f) * m;
  return out;
}

double max_coeff(const SymMat& m) {
  double out = 0.0;
  for (const auto& row : m)
    for (const auto& f : row) out = std::max(out, f.max_abs_coeff());
  return out;
}

double max_residual_on(const SymMat& m, const std::vector<std::array<double, 2>>& pts) {
  double out = 0.0;
  for (const auto& p : pts)
    for (const auto& row : m)
      for (const auto& f : row) out = std::max(out, std::abs(eval(f, p)));
  return out;
}

std::vector<std::array<double, 2>> probe_grid() {
  std::vector<std::array<double, 2>> out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out.push_back({1.0 + 0.25 * i, -1.0 + 0.5 * j});
  return out;
}

EigenspaceDescription eigenspace(const AffineConnection2& conn, const Rational& mu) {
  EigenspaceDescription desc;
  desc.mu = mu;
  desc.input = conn;
  desc.frame = conn;
  if (conn.kind == Kind::A) {
    type_a(desc);
  } else {
    type_b(desc);
  }
  return desc;
}

std::vector<AnsatzFunction> to_input_coordinates(const EigenspaceDescription& desc) {
  if (desc.normalization.identity()) return desc.basis;
  const Mat2 j = desc.normalization.jacobian();
  std::vector<AnsatzFunction> out;
  for (const auto& f : desc.basis) out.push_back(substitute_linear(f, to_double(j)));
  return out;
}

std::vector<AnsatzFunction> realize_real_basis(const EigenspaceDescription& desc) {
  std::vector<AnsatzFunction> parts;
  for (const auto& f : desc.basis) {
    for (const auto& g : {real_part(f), imag_part(f)}) {
      const AnsatzFunction p = g.pruned(1e-12 * std::max(1.0, g.max_abs_coeff()));
      if (!p.is_zero()) parts.push_back(p);
    }
  }
  return rank_basis(parts).basis;
}

std::optional<AnsatzFunction> log_of_monomial(const AnsatzFunction& f) {
  if (f.terms().size() != 1) return std::nullopt;
  const Term& t = f.terms().front();
  if (t.logdeg != 0 || t.deg2 != 0 || t.fiberdeg1 != 0 || t.fiberdeg2 != 0) return std::nullopt;
  if (t.coeff.imag() != 0.0 || t.coeff.real() <= 0.0) return std::nullopt;
  if (t.exp1.imag() != 0.0 || t.exp2.imag() != 0.0 || t.pow1.imag() != 0.0) return std::nullopt;
  const Context ctx = f.context();
  if (ctx == Context::TypeA && t.pow1 != 0.0) return std::nullopt;
  std::vector<Term> out;
  Term c;
  c.coeff = std::log(t.coeff.real());
  out.push_back(c);
  if (t.exp1 != 0.0) {
    Term x;
    x.coeff = t.exp1;
    x.pow1 = 1.0;
    out.push_back(x);
  }
  if (t.exp2 != 0.0) {
    Term x;
    x.coeff = t.exp2;
    x.deg2 = 1;
    out.push_back(x);
  }
  if (t.pow1 != 0.0) {
    Term x;
    x.coeff = t.pow1;
    x.logdeg = 1;
    out.push_back(x);
  }
  return AnsatzFunction(ctx, std::move(out));
}

NonlinearTransform::NonlinearTransform(AffineConnection2 conn, Rational mu, AnsatzFunction f)
    : conn_(std::move(conn)), mu_(std::move(mu)), f_(std::move(f)) {
  if (mu_ == 0) throw std::invalid_argument("the nonlinear form needs mu != 0");
  df_ = {derive(f_, 0), derive(f_, 1)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ddf_[i][j] = derive(df_[i], j);
  if (auto lg = log_of_monomial(f_)) fhat_ = *lg * Complex(-2.0 / to_double(mu_));
}

std::optional<SymMat> NonlinearTransform::exact_residual() const {
  if (!fhat_) return std::nullopt;
  SymMat out = hessian(conn_, *fhat_);
  const auto rho = as_functions(ricci(conn_).rho_s, conn_.kind);
  const std::array<AnsatzFunction, 2> dh = {derive(*fhat_, 0), derive(*fhat_, 1)};
  const Complex half_mu = to_double(mu_) / 2.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] += rho[i][j] * Complex(2.0) - internal::multiply(dh[i], dh[j]) * half_mu;
  return out;
}

double NonlinearTransform::f_at(const std::array<double, 2>& p) const {
  const Complex v = eval(f_, p);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)) || v.real() <= 0.0) {
    throw std::domain_error("f is not positive at a probe point");
  }
  return v.real();
}

double NonlinearTransform::value(const std::array<double, 2>& p) const {
  return -2.0 / to_double(mu_) * std::log(f_at(p));
}

std::array<double, 2> NonlinearTransform::gradient(const std::array<double, 2>& p) const {
  const double f = f_at(p);
  const double s = -2.0 / to_double(mu_);
  return {s * eval(df_[0], p).real() / f, s * eval(df_[1], p).real() / f};
}

CMat2 NonlinearTransform::hessian_of_fhat(const std::array<double, 2>& p) const {
  const double f = f_at(p);
  const double s = -2.0 / to_double(mu_);
  const std::array<double, 2> g = {eval(df_[0], p).real(), eval(df_[1], p).real()};
  const double x1 = p[0];
  const double scale = conn_.kind == Kind::B ? 1.0 / x1 : 1.0;
  CMat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double fij = eval(ddf_[i][j], p).real();
      double h = s * (fij / f - g[i] * g[j] / (f * f));
      for (int k = 0; k < 2; ++k) h -= conn_.gamma(i, j, k).to_double() * scale * s * g[k] / f;
      out[i][j] = h;
    }
  return out;
}

CMat2 NonlinearTransform::residual_at(const std::array<double, 2>& p) const {
  const CMat2 h = hessian_of_fhat(p);
  const auto grad = gradient(p);
  const Mat2 rho = ricci(conn_).rho_s;
  const double rs = conn_.kind == Kind::B ? 1.0 / (p[0] * p[0]) : 1.0;
  CMat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = h[i][j] + 2.0 * rho[i][j].to_double() * rs - to_double(mu_) / 2.0 * grad[i] * grad[j];
  return out;
}

bool killing_stability_check(const AffineConnection2& /*conn*/, const Rational& /*mu*/,
                             const EigenspaceDescription& desc) {
  if (desc.basis.empty()) return true;
  const Context ctx = desc.frame.context();
  const std::size_t r = rank_basis(desc.basis).rank;
  auto stays = [&](const AnsatzFunction& g) {
    auto all = desc.basis;
    all.push_back(g.pruned(1e-13 * std::max(1.0, g.max_abs_coeff())));
    return rank_basis(all).rank == r;
  };
  for (const auto& f : desc.basis) {
    if (desc.frame.kind == Kind::A) {
      if (!stays(derive(f, 0)) || !stays(derive(f, 1))) return false;
    } else {
      const AnsatzFunction x = internal::multiply(AnsatzFunction::coordinate(ctx, 0), derive(f, 0)) +
                               internal::multiply(AnsatzFunction::coordinate(ctx, 1), derive(f, 1));
      if (!stays(derive(f, 1)) || !stays(x)) return false;
    }
  }
  return true;
}

}  // namespace qe
