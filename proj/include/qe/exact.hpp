#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace qe {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q" or a finite decimal such as "-0.25" into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

/// An element a + b*sqrt(d) of a real quadratic field, d > 1 squarefree.
///
/// Rescaling a Type B connection so that C_22^1 = +-1 multiplies some
/// coefficients by sqrt|C_22^1|. Carrying that root symbolically keeps every
/// classification predicate exact. Mixing two different radicands throws
/// std::domain_error; a single connection never does so.
class Surd {
 public:
  Surd() = default;
  Surd(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational r) : a_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a, Rational b, Integer d);

  /// Exact square root of a non-negative rational.
  static Surd sqrt(const Rational& r);
  static Surd parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Integer& radicand() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  Rational to_rational() const;  // throws std::domain_error when irrational
  double to_double() const;
  int sign() const;
  std::string str() const;

  Surd operator-() const { return Surd(-a_, -b_, d_); }
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);

  friend Surd operator+(Surd l, const Surd& r) { return l += r; }
  friend Surd operator-(Surd l, const Surd& r) { return l -= r; }
  friend Surd operator*(Surd l, const Surd& r) { return l *= r; }
  friend Surd operator/(Surd l, const Surd& r) { return l /= r; }
  friend bool operator==(const Surd& l, const Surd& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && (l.b_ == 0 || l.d_ == r.d_);
  }
  friend bool operator!=(const Surd& l, const Surd& r) { return !(l == r); }
  friend bool operator<(const Surd& l, const Surd& r) { return (l - r).sign() < 0; }

 private:
  void normalize();
  const Integer& common_radicand(const Surd& o) const;

  Rational a_{0};
  Rational b_{0};
  Integer d_{1};
};

}  // namespace qe
