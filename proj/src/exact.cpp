#include "qe/exact.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace qe {

namespace {

const std::regex kRationalRe(R"(^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$)");
const std::regex kDecimalRe(R"(^\s*([+-]?)(\d*)\.(\d+)\s*$)");
const std::regex kRadicalRe(R"(^\s*sqrt\((\d+)\)\s*$)");

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Writes n = s^2 * d with d squarefree.
std::pair<Integer, Integer> split_square(Integer n) {
  if (n > Integer("100000000000000")) {
    throw std::domain_error("radicand too large for exact square-root extraction");
  }
  Integer s = 1;
  Integer d = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      d *= p;
    }
  }
  d *= n;
  return {s, d};
}

// boost reads a leading 0 as an octal prefix
Integer decimal_integer(std::string digits) {
  bool neg = false;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    neg = digits[0] == '-';
    digits.erase(0, 1);
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Integer v(digits);
  return neg ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kRationalRe)) {
    Integer num = decimal_integer(m[1].str());
    Integer den = m[2].matched ? decimal_integer(m[2].str()) : Integer(1);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  if (std::regex_match(s, m, kDecimalRe)) {
    const std::string whole = m[2].str().empty() ? "0" : m[2].str();
    const std::string frac = m[3].str();
    Integer num = decimal_integer(whole + frac);
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Rational r(num, den);
    return m[1].str() == "-" ? Rational(-r) : r;
  }
  throw std::invalid_argument("not a rational number: '" + s + "'");
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Surd::Surd(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  normalize();
}

void Surd::normalize() {
  if (b_ == 0) {
    d_ = 1;
    return;
  }
  if (d_ <= 0) throw std::domain_error("Surd radicand must be positive");
  auto [s, d] = split_square(d_);
  b_ *= Rational(s);
  d_ = d;
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

Surd Surd::sqrt(const Rational& r) {
  if (r < 0) throw std::domain_error("square root of a negative rational");
  if (r == 0) return Surd();
  // sqrt(p/q) = sqrt(p*q)/q
  const Integer p = numerator(r);
  const Integer q = denominator(r);
  return Surd(Rational(0), Rational(1, q), p * q);
}

Surd Surd::parse(std::string_view text) {
  // Accepts a+b*sqrt(d), a-b*sqrt(d), b*sqrt(d), -sqrt(d) and plain rationals.
  const std::string s(text);
  const auto at = s.find("sqrt(");
  if (at == std::string::npos) return Surd(parse_rational(s));
  std::smatch m;
  const std::string radical = s.substr(at);
  if (!std::regex_match(radical, m, kRadicalRe)) throw std::invalid_argument("malformed surd: '" + s + "'");
  std::string prefix = trim(s.substr(0, at));
  if (!prefix.empty() && prefix.back() == '*') prefix = trim(prefix.substr(0, prefix.size() - 1));
  Rational a = 0;
  const auto split = prefix.find_last_of("+-");
  std::string coeff = prefix;
  if (split != std::string::npos && split > 0) {
    a = parse_rational(prefix.substr(0, split));
    coeff = trim(prefix.substr(split));
  }
  Rational b = 1;
  if (coeff == "-") {
    b = -1;
  } else if (!coeff.empty() && coeff != "+") {
    b = parse_rational(coeff);
  }
  return Surd(a, b, decimal_integer(m[1].str()));
}

Rational Surd::to_rational() const {
  if (!is_rational()) throw std::domain_error("irrational value " + str() + " where a rational is required");
  return a_;
}

double Surd::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
}

int Surd::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 d
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

std::string Surd::str() const {
  if (b_ == 0) return format_rational(a_);
  std::string out;
  if (a_ != 0) out = format_rational(a_) + (b_ > 0 ? "+" : "");
  if (b_ == -1) {
    out += "-";
  } else if (b_ != 1) {
    out += format_rational(b_) + "*";
  }
  return out + "sqrt(" + d_.str() + ")";
}

const Integer& Surd::common_radicand(const Surd& o) const {
  if (b_ == 0) return o.d_;
  if (o.b_ == 0 || d_ == o.d_) return d_;
  throw std::domain_error("arithmetic between sqrt(" + d_.str() + ") and sqrt(" + o.d_.str() + ")");
}

Surd& Surd::operator+=(const Surd& o) {
  const Integer d = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  d_ = d;
  if (b_ == 0) d_ = 1;
  return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
  const Integer d = common_radicand(o);
  const Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = b_ == 0 ? Integer(1) : d;
  return *this;
}

Surd& Surd::operator/=(const Surd& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(o.d_);
  Surd conj(o.a_ / norm, -o.b_ / norm, o.d_);
  return *this *= conj;
}

}  // namespace qe
