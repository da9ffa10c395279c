#pragma once

#include "qe/exact.hpp"
#include "qe/linalg.hpp"

#include <vector>

namespace qe {

/// Univariate polynomial over an exact field, coefficients lowest degree first.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  static Poly monomial(T coeff, std::size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = std::move(coeff);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  T lead() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b * Poly({T(-1)}); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; `d` must be non-zero.
  static std::pair<Poly, Poly> divmod(Poly n, const Poly& d) {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> q(std::max(0, n.degree() - d.degree() + 1), T(0));
    while (!n.is_zero() && n.degree() >= d.degree()) {
      const std::size_t shift = n.degree() - d.degree();
      const T f = n.lead() / d.lead();
      q[shift] = f;
      n = n - monomial(f, shift) * d;
    }
    return {Poly(std::move(q)), n};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    std::vector<T> c = c_;
    const T l = lead();
    for (auto& x : c) x = x / l;
    return Poly(std::move(c));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> c(c_.size() - 1, T(0));
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * T(static_cast<int>(i));
    return Poly(std::move(c));
  }

  /// Substitutes x -> p(x).
  Poly compose(const Poly& p) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * p + Poly({*it});
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = Poly<T>::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Product of the distinct irreducible factors of `p` (p / gcd(p, p')).
template <class T>
Poly<T> squarefree_part(const Poly<T>& p) {
  if (p.degree() <= 0) return p.monic();
  const auto g = poly_gcd(p, p.derivative());
  return Poly<T>::divmod(p, g).first.monic();
}

/// Complex roots of a polynomial with coefficients given as doubles; roots of
/// a squarefree polynomial are polished by Newton steps.
std::vector<Complex> numeric_roots(const std::vector<Complex>& coeffs);

template <class T>
std::vector<Complex> numeric_roots(const Poly<T>& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) {
    if constexpr (std::is_same_v<T, Rational>) {
      c.emplace_back(to_double(x));
    } else {
      c.emplace_back(x.to_double());
    }
  }
  return numeric_roots(c);
}

}  // namespace qe
