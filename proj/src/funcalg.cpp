#include "qe/funcalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qe {

namespace {

constexpr double kExponentTol = 1e-12;

bool close(Complex a, Complex b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kExponentTol * scale;
}

// -1 / 0 / +1 with tolerant equality on each part.
int cmp(Complex a, Complex b) {
  if (close(a, b)) return 0;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a.real() - b.real()) > kExponentTol * scale) return a.real() < b.real() ? -1 : 1;
  return a.imag() < b.imag() ? -1 : 1;
}

int cmp(int a, int b) { return a == b ? 0 : (a < b ? -1 : 1); }

int compare(const Term& a, const Term& b) {
  if (int c = cmp(a.exp1, b.exp1)) return c;
  if (int c = cmp(a.exp2, b.exp2)) return c;
  if (int c = cmp(a.pow1, b.pow1)) return c;
  if (int c = cmp(a.logdeg, b.logdeg)) return c;
  if (int c = cmp(a.deg2, b.deg2)) return c;
  if (int c = cmp(a.fiberdeg1, b.fiberdeg1)) return c;
  return cmp(a.fiberdeg2, b.fiberdeg2);
}

bool is_natural(Complex z) {
  return z.imag() == 0.0 && z.real() >= 0.0 && z.real() == std::floor(z.real());
}

bool is_integer(Complex z, int& n) {
  if (z.imag() != 0.0 || z.real() != std::floor(z.real()) || std::abs(z.real()) > 1e6) return false;
  n = static_cast<int>(z.real());
  return true;
}

void check_term(Context ctx, const Term& t) {
  if (t.logdeg < 0 || t.deg2 < 0 || t.fiberdeg1 < 0 || t.fiberdeg2 < 0) {
    throw std::invalid_argument("negative degree in term");
  }
  switch (ctx) {
    case Context::TypeA:
      if (t.logdeg != 0 || !is_natural(t.pow1)) {
        throw std::invalid_argument("Type A terms are exponential times polynomial");
      }
      break;
    case Context::TypeB:
      if (t.exp1 != 0.0 || t.exp2 != 0.0) throw std::invalid_argument("Type B terms carry no exponential factor");
      break;
    case Context::Fourd:
      return;
  }
  if (t.fiberdeg1 != 0 || t.fiberdeg2 != 0) throw std::invalid_argument("fiber degree on a surface function");
}

Complex ipow(double x, int n) {
  if (n < 0 && x == 0.0) throw std::domain_error("negative power of zero");
  return std::pow(x, n);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json exponent_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return complex_json(z);
}

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a number or [re, im]");
}

std::string complex_str(Complex z) {
  std::ostringstream os;
  os.precision(12);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

std::string to_string(Context c) {
  switch (c) {
    case Context::TypeA:
      return "A";
    case Context::TypeB:
      return "B";
    case Context::Fourd:
      return "4d";
  }
  return "?";
}

int arity(Context c) { return c == Context::Fourd ? 4 : 2; }

bool same_monomial(const Term& a, const Term& b) { return compare(a, b) == 0; }
bool monomial_less(const Term& a, const Term& b) { return compare(a, b) < 0; }

AnsatzFunction::AnsatzFunction(Context ctx, std::vector<Term> terms) : ctx_(ctx), terms_(std::move(terms)) {
  for (const auto& t : terms_) check_term(ctx_, t);
  normalize();
}

void AnsatzFunction::normalize() {
  std::stable_sort(terms_.begin(), terms_.end(), monomial_less);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && same_monomial(merged.back(), t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
  terms_ = std::move(merged);
}

AnsatzFunction AnsatzFunction::constant(Context ctx, Complex c) {
  Term t;
  t.coeff = c;
  return AnsatzFunction(ctx, {t});
}

AnsatzFunction AnsatzFunction::coordinate(Context ctx, int axis) {
  if (axis < 0 || axis >= arity(ctx)) throw std::out_of_range("coordinate axis out of range");
  Term t;
  switch (axis) {
    case 0:
      t.pow1 = 1.0;
      break;
    case 1:
      t.deg2 = 1;
      break;
    case 2:
      t.fiberdeg1 = 1;
      break;
    default:
      t.fiberdeg2 = 1;
  }
  return AnsatzFunction(ctx, {t});
}

double AnsatzFunction::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

AnsatzFunction AnsatzFunction::pruned(double tol) const {
  AnsatzFunction out(ctx_);
  out.terms_ = terms_;
  std::erase_if(out.terms_, [tol](const Term& t) { return std::abs(t.coeff) <= tol; });
  return out;
}

AnsatzFunction AnsatzFunction::operator-() const {
  AnsatzFunction out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

AnsatzFunction& AnsatzFunction::operator+=(const AnsatzFunction& o) {
  if (o.ctx_ != ctx_) throw std::invalid_argument("adding functions from different algebras");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

AnsatzFunction& AnsatzFunction::operator-=(const AnsatzFunction& o) { return *this += -o; }

AnsatzFunction& AnsatzFunction::operator*=(Complex s) {
  for (auto& t : terms_) t.coeff *= s;
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0.0; });
  return *this;
}

AnsatzFunction AnsatzFunction::with_context(Context ctx) const { return AnsatzFunction(ctx, terms_); }

AnsatzFunction derive(const AnsatzFunction& f, int axis) {
  if (axis < 0 || axis >= arity(f.context())) throw std::out_of_range("derivative axis out of range");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    switch (axis) {
      case 0: {
        if (t.exp1 != 0.0) {
          Term d = t;
          d.coeff *= t.exp1;
          out.push_back(d);
        }
        if (t.pow1 != 0.0) {
          Term d = t;
          d.coeff *= t.pow1;
          d.pow1 -= 1.0;
          out.push_back(d);
        }
        if (t.logdeg > 0) {
          Term d = t;
          d.coeff *= static_cast<double>(t.logdeg);
          d.pow1 -= 1.0;
          d.logdeg -= 1;
          out.push_back(d);
        }
        break;
      }
      case 1: {
        if (t.exp2 != 0.0) {
          Term d = t;
          d.coeff *= t.exp2;
          out.push_back(d);
        }
        if (t.deg2 > 0) {
          Term d = t;
          d.coeff *= static_cast<double>(t.deg2);
          d.deg2 -= 1;
          out.push_back(d);
        }
        break;
      }
      case 2:
        if (t.fiberdeg1 > 0) {
          Term d = t;
          d.coeff *= static_cast<double>(t.fiberdeg1);
          d.fiberdeg1 -= 1;
          out.push_back(d);
        }
        break;
      default:
        if (t.fiberdeg2 > 0) {
          Term d = t;
          d.coeff *= static_cast<double>(t.fiberdeg2);
          d.fiberdeg2 -= 1;
          out.push_back(d);
        }
    }
  }
  return AnsatzFunction(f.context(), std::move(out));
}

Complex eval(const Term& t, std::span<const double> p) {
  const double x1 = p[0];
  const double x2 = p[1];
  Complex v = t.coeff;
  if (t.exp1 != 0.0 || t.exp2 != 0.0) v *= std::exp(t.exp1 * x1 + t.exp2 * x2);
  if (t.pow1 != 0.0) {
    int n = 0;
    if (is_integer(t.pow1, n)) {
      v *= ipow(x1, n);
    } else {
      if (x1 <= 0.0) throw std::domain_error("non-integer power of x1 needs x1 > 0");
      v *= std::exp(t.pow1 * std::log(x1));
    }
  }
  if (t.logdeg > 0) {
    if (x1 <= 0.0) throw std::domain_error("log x1 needs x1 > 0");
    v *= std::pow(std::log(x1), t.logdeg);
  }
  if (t.deg2 > 0) v *= std::pow(x2, t.deg2);
  if (t.fiberdeg1 > 0) v *= std::pow(p[2], t.fiberdeg1);
  if (t.fiberdeg2 > 0) v *= std::pow(p[3], t.fiberdeg2);
  return v;
}

Complex eval(const AnsatzFunction& f, std::span<const double> p) {
  if (static_cast<int>(p.size()) != arity(f.context())) throw std::invalid_argument("point dimension mismatch");
  Complex acc = 0.0;
  for (const auto& t : f.terms()) acc += eval(t, p);
  return acc;
}

RankResult rank_basis(const std::vector<AnsatzFunction>& fs) {
  RankResult out;
  if (fs.empty()) return out;
  const Context ctx = fs.front().context();
  std::vector<Term> keys;
  for (const auto& f : fs) {
    if (f.context() != ctx) throw std::invalid_argument("rank_basis over mixed algebras");
    for (const auto& t : f.terms()) {
      const auto it = std::find_if(keys.begin(), keys.end(), [&](const Term& k) { return same_monomial(k, t); });
      if (it == keys.end()) keys.push_back(t);
    }
  }
  Matrix<Complex> rows;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::vector<Complex> row(keys.size(), 0.0);
    for (const auto& t : fs[i].terms()) {
      for (std::size_t k = 0; k < keys.size(); ++k) {
        if (same_monomial(keys[k], t)) {
          row[k] += t.coeff;
          break;
        }
      }
    }
    auto trial = rows;
    trial.push_back(row);
    auto work = trial;
    if (numeric_row_reduce(work, keys.size(), 1e-9).size() > rows.size()) {
      rows = std::move(trial);
      out.basis.push_back(fs[i]);
      out.indices.push_back(i);
    }
  }
  out.rank = rows.size();
  return out;
}

AnsatzFunction conjugate(const AnsatzFunction& f) {
  std::vector<Term> ts = f.terms();
  for (auto& t : ts) {
    t.coeff = std::conj(t.coeff);
    t.exp1 = std::conj(t.exp1);
    t.exp2 = std::conj(t.exp2);
    t.pow1 = std::conj(t.pow1);
  }
  return AnsatzFunction(f.context(), std::move(ts));
}

AnsatzFunction real_part(const AnsatzFunction& f) { return (f + conjugate(f)) * Complex(0.5); }

AnsatzFunction imag_part(const AnsatzFunction& f) { return (f - conjugate(f)) * Complex(0.0, -0.5); }

AnsatzFunction substitute_linear(const AnsatzFunction& f, const std::array<std::array<double, 2>, 2>& m) {
  const Context ctx = f.context();
  const Context work = Context::Fourd;
  auto linear = [&](double a, double b) {
    Term t1;
    t1.coeff = a;
    t1.pow1 = 1.0;
    Term t2;
    t2.coeff = b;
    t2.deg2 = 1;
    return AnsatzFunction(work, {t1, t2});
  };
  auto power = [&](const AnsatzFunction& base, int n) {
    AnsatzFunction acc = AnsatzFunction::constant(work, 1.0);
    for (int i = 0; i < n; ++i) acc = internal::multiply(acc, base);
    return acc;
  };
  const AnsatzFunction u1 = linear(m[0][0], m[0][1]);
  const AnsatzFunction u2 = linear(m[1][0], m[1][1]);

  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    AnsatzFunction part(work);
    int n = 0;
    if (t.logdeg == 0 && is_integer(t.pow1, n) && n >= 0) {
      part = power(u1, n);
    } else {
      if (m[0][1] != 0.0 || m[0][0] <= 0.0) {
        throw std::invalid_argument("substitution would mix x2 into a power or log of x1");
      }
      Term head;
      head.coeff = std::exp(t.pow1 * std::log(m[0][0]));
      head.pow1 = t.pow1;
      // log(m x1)^k = sum_i C(k,i) log(m)^{k-i} log(x1)^i
      std::vector<Term> logs;
      for (int i = 0; i <= t.logdeg; ++i) {
        Term l = head;
        l.coeff *= binomial(t.logdeg, i) * std::pow(std::log(m[0][0]), t.logdeg - i);
        l.logdeg = i;
        logs.push_back(l);
      }
      part = AnsatzFunction(work, std::move(logs));
    }
    part = internal::multiply(part, power(u2, t.deg2));
    Term expo;
    expo.coeff = t.coeff;
    expo.exp1 = t.exp1 * m[0][0] + t.exp2 * m[1][0];
    expo.exp2 = t.exp1 * m[0][1] + t.exp2 * m[1][1];
    expo.fiberdeg1 = t.fiberdeg1;
    expo.fiberdeg2 = t.fiberdeg2;
    part = internal::multiply(part, AnsatzFunction(work, {expo}));
    out.insert(out.end(), part.terms().begin(), part.terms().end());
  }
  return AnsatzFunction(ctx, std::move(out));
}

nlohmann::json to_json(const AnsatzFunction& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    arr.push_back({{"coeff", complex_json(t.coeff)},
                   {"exp", nlohmann::json::array({exponent_json(t.exp1), exponent_json(t.exp2)})},
                   {"pow1", complex_json(t.pow1)},
                   {"log", t.logdeg},
                   {"x2", t.deg2},
                   {"y", nlohmann::json::array({t.fiberdeg1, t.fiberdeg2})}});
  }
  return arr;
}

AnsatzFunction function_from_json(const nlohmann::json& j, Context ctx) {
  if (!j.is_array()) throw std::invalid_argument("function must be a JSON array of terms");
  std::vector<Term> ts;
  for (const auto& o : j) {
    Term t;
    t.coeff = complex_from_json(o.at("coeff"));
    if (o.contains("exp")) {
      t.exp1 = complex_from_json(o["exp"].at(0));
      t.exp2 = complex_from_json(o["exp"].at(1));
    }
    if (o.contains("pow1")) t.pow1 = complex_from_json(o["pow1"]);
    t.logdeg = o.value("log", 0);
    t.deg2 = o.value("x2", 0);
    if (o.contains("y")) {
      t.fiberdeg1 = o["y"].at(0).get<int>();
      t.fiberdeg2 = o["y"].at(1).get<int>();
    }
    ts.push_back(t);
  }
  return AnsatzFunction(ctx, std::move(ts));
}

std::string to_string(const AnsatzFunction& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    out += complex_str(t.coeff);
    if (t.exp1 != 0.0 || t.exp2 != 0.0) {
      out += "*exp(";
      if (t.exp1 != 0.0) out += complex_str(t.exp1) + "*x1";
      if (t.exp1 != 0.0 && t.exp2 != 0.0) out += "+";
      if (t.exp2 != 0.0) out += complex_str(t.exp2) + "*x2";
      out += ")";
    }
    if (t.pow1 != 0.0) out += "*x1^" + complex_str(t.pow1);
    if (t.logdeg > 0) out += "*log(x1)^" + std::to_string(t.logdeg);
    if (t.deg2 > 0) out += "*x2^" + std::to_string(t.deg2);
    if (t.fiberdeg1 > 0) out += "*y1^" + std::to_string(t.fiberdeg1);
    if (t.fiberdeg2 > 0) out += "*y2^" + std::to_string(t.fiberdeg2);
  }
  return out;
}

namespace internal {

AnsatzFunction multiply(const AnsatzFunction& a, const AnsatzFunction& b) {
  if (a.context() != b.context()) throw std::invalid_argument("multiplying functions from different algebras");
  std::vector<Term> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      Term p;
      p.coeff = s.coeff * t.coeff;
      p.exp1 = s.exp1 + t.exp1;
      p.exp2 = s.exp2 + t.exp2;
      p.pow1 = s.pow1 + t.pow1;
      p.logdeg = s.logdeg + t.logdeg;
      p.deg2 = s.deg2 + t.deg2;
      p.fiberdeg1 = s.fiberdeg1 + t.fiberdeg1;
      p.fiberdeg2 = s.fiberdeg2 + t.fiberdeg2;
      out.push_back(p);
    }
  }
  return AnsatzFunction(a.context(), std::move(out));
}

AnsatzFunction reciprocal(const AnsatzFunction& f) {
  if (f.terms().size() != 1) throw std::invalid_argument("reciprocal of a sum");
  Term t = f.terms().front();
  if (t.logdeg != 0 || t.deg2 != 0 || t.fiberdeg1 != 0 || t.fiberdeg2 != 0) {
    throw std::invalid_argument("reciprocal leaves the algebra");
  }
  t.coeff = 1.0 / t.coeff;
  t.exp1 = -t.exp1;
  t.exp2 = -t.exp2;
  t.pow1 = -t.pow1;
  return AnsatzFunction(f.context(), {t});
}

}  // namespace internal

}  // namespace qe
